#pragma once

#include "approx/finite_ring.hpp"
#include "approx/ring.hpp"

#include <string>
#include <variant>
#include <vector>

namespace approx {

/// d1 Z x ... x dk Z inside Z^k (k = 1 for Z). Generators are nonnegative.
struct Principal {
  std::vector<BigInt> gens;
  bool operator==(const Principal&) const = default;
};

/// A subset of a ring: an explicit element set for finite rings, or a
/// principal subgroup of Z / Z^k. Closure values on finite rings may be
/// arbitrary sets; on Z they are always principal.
class Subset {
 public:
  Subset(Ring ring, ElemSet set);
  Subset(Ring ring, Principal p);
  static Subset principal(const BigInt& d);

  const Ring& ring() const { return ring_; }
  bool is_set() const { return std::holds_alternative<ElemSet>(value_); }
  const ElemSet& set() const { return std::get<ElemSet>(value_); }
  const Principal& principal() const { return std::get<Principal>(value_); }
  /// Generator of a subgroup of Z.
  const BigInt& generator() const;

  bool contains(const RingElem& x) const;
  bool is_subgroup() const;
  bool is_ideal() const;
  bool subset_of(const Subset& o) const;
  bool is_whole_ring() const;
  std::size_t finite_size() const { return set().count(); }
  std::string to_string() const;

  bool operator==(const Subset& o) const;
  bool operator!=(const Subset& o) const { return !(*this == o); }

 private:
  Ring ring_;
  std::variant<ElemSet, Principal> value_;
};

using SubgroupRep = Subset;

/// A finitely generated classical ideal with its canonical form.
struct IdealRep {
  Ring ring;
  std::vector<RingElem> generators;
  Subset canonical;

  bool contains(const RingElem& x) const { return canonical.contains(x); }
  std::string to_string() const { return canonical.to_string(); }
  bool operator==(const IdealRep& o) const { return canonical == o.canonical; }
};

IdealRep ideal_generated(const Ring& ring, const std::vector<RingElem>& gens);
/// The ideal generated by a subset, keeping the subset's members as generators
/// (finite rings) or its principal generators (Z^k).
IdealRep ideal_of(const Subset& s);
IdealRep ideal_sum(const IdealRep& a, const IdealRep& b);
IdealRep ideal_classical_product(const IdealRep& a, const IdealRep& b);

/// Every additive subgroup of a finite ring, see enumerate_subgroups on tables.
std::vector<Subset> enumerate_subgroups(const Ring& ring,
                                        std::size_t guard = kDefaultSubgroupGuard);

/// Comma-separated element list, split at top-level commas. Empty text gives
/// an empty list.
std::vector<RingElem> parse_element_list(const Ring& ring, std::string_view text);
std::vector<std::string_view> split_top_level(std::string_view text, char sep = ',');

/// Elements of a finite subset, as ring elements.
std::vector<RingElem> subset_elements(const Subset& s);
ElemSet to_elem_set(const Ring& ring, const std::vector<RingElem>& xs);

}  // namespace approx
