#pragma once

#include "approx/ring.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace approx {

using Index = std::uint32_t;
/// A subset of a finite carrier, one bit per element index.
using ElemSet = boost::dynamic_bitset<std::uint64_t>;

/// Bit indices of a set in increasing order.
std::vector<Index> members(const ElemSet& s);

/// Operation tables of a finite commutative ring over element indices
/// 0..size-1. Built from a Ring descriptor, or directly from tables for
/// derived rings (quotients, localizations).
class FiniteRing {
 public:
  FiniteRing(std::size_t size, std::vector<Index> add, std::vector<Index> mul,
             Index zero, Index one, std::vector<std::string> labels);

  static FiniteRing from_ring(const Ring& ring);

  std::size_t size() const { return size_; }
  Index add(Index a, Index b) const { return add_[a * size_ + b]; }
  Index mul(Index a, Index b) const { return mul_[a * size_ + b]; }
  Index neg(Index a) const { return neg_[a]; }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }
  Index zero() const { return zero_; }
  Index one() const { return one_; }
  Index power(Index a, std::uint64_t e) const;
  const std::string& label(Index i) const { return labels_[i]; }
  const std::optional<Ring>& descriptor() const { return descriptor_; }

  ElemSet empty_set() const { return ElemSet(size_); }
  ElemSet full_set() const;
  ElemSet singleton(Index i) const;
  ElemSet from_members(const std::vector<Index>& xs) const;

  /// Smallest additive subgroup containing `gens`.
  ElemSet subgroup_closure(const ElemSet& gens) const;
  /// Smallest ideal containing `gens`: the subgroup generated by R*gens.
  ElemSet ideal_closure(const ElemSet& gens) const;
  ElemSet sumset(const ElemSet& a, const ElemSet& b) const;
  ElemSet scale(Index r, const ElemSet& a) const;
  ElemSet product_set(const ElemSet& a, const ElemSet& b) const;

  bool is_subgroup(const ElemSet& s) const;
  bool is_ideal(const ElemSet& s) const;

  std::string format_set(const ElemSet& s) const;

 private:
  std::size_t size_;
  std::vector<Index> add_, mul_, neg_;
  Index zero_, one_;
  std::vector<std::string> labels_;
  std::optional<Ring> descriptor_;
};

inline constexpr std::size_t kDefaultSubgroupGuard = 64;

/// Every additive subgroup exactly once, sorted by (cardinality, bits).
/// Obtained by closing each known subgroup with one more element until no new
/// subgroup appears. ResourceLimit when size() exceeds `guard`.
std::vector<ElemSet> enumerate_subgroups(const FiniteRing& ring,
                                         std::size_t guard = kDefaultSubgroupGuard);

/// Classical ideals, same order and guard.
std::vector<ElemSet> enumerate_ideals(const FiniteRing& ring,
                                      std::size_t guard = kDefaultSubgroupGuard);

/// Failed ring axiom with a witness, or nullopt when every axiom holds
/// exhaustively. O(size^3).
std::optional<std::string> find_ring_axiom_violation(const FiniteRing& ring);

}  // namespace approx
