#pragma once

#include "approx/axioms.hpp"
#include "approx/ideal_theory.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace approx {

/// An ideal in a spectrum computation: an element set of a finite ring, or
/// the generator d >= 0 of (d) in Z.
using IdealValue = std::variant<ElemSet, std::uint64_t>;

namespace detail {
struct SpectrumOps;
}

struct SpectrumOptions {
  bool parallel = true;
  /// Z: generators searched are 0..bound; 0 selects max(1000, m).
  std::uint64_t bound = 0;
  std::size_t guard = kDefaultSubgroupGuard;
};

struct Spectrum {
  enum class Method { ClosedForm, Exhaustive, Bounded };

  std::string name;  // ring and closure
  Method method = Method::Exhaustive;
  std::vector<IdealValue> primes;  // sorted: by size then bits, or by generator
  std::vector<std::string> labels;
  std::vector<IdealValue> closures;  // cl(P) for each prime
  std::uint64_t candidates = 0;   // subgroups or generators examined
  std::uint64_t bound = 0;        // Z only
  std::string domain_note;
  /// Z with a shift: closed form against brute force over every generator.
  std::optional<Verdict> cross_check;
  std::shared_ptr<const detail::SpectrumOps> ops;

  std::size_t size() const { return primes.size(); }
  bool bounded() const { return method == Method::Bounded; }
  /// Index of a prime, or nullopt.
  std::optional<std::size_t> find(const IdealValue& p) const;
};

/// Finite rings: approximate ideals among all subgroups, proper and prime.
Spectrum spectrum(const ApproxRing& ar, const SpectrumOptions& opt = {});
/// Finite rings as above; Z with gen, shift:J=m or setshift:J=m. Shifts use
/// the closed form {(p) : p prime, p | m} cross-checked by brute force; gen
/// is enumerated within the bound and flagged as bounded.
Spectrum spectrum(const ClosureSpec& cl, const SpectrumOptions& opt = {});

/// Converts a Subset of the spectrum's ring (finite set or principal Z subgroup).
IdealValue ideal_value(const Subset& s);
std::string format_ideal(const Spectrum& sp, const IdealValue& i);

/// V(I) = {P : cl(I) ⊆ cl(P)}, as indices into sp.primes.
std::vector<std::size_t> v_set(const Spectrum& sp, const IdealValue& i);
/// D(f) = Spec \ V(<f>). `f` is an element index (finite) or an integer (Z).
std::vector<std::size_t> d_set(const Spectrum& sp, std::uint64_t f);
std::vector<std::size_t> d_set(const Spectrum& sp, const RingElem& f);
/// Closure of {P} in the topology, V(P). PreconditionError("not-in-spectrum").
std::vector<std::size_t> closure_of_point(const Spectrum& sp, const IdealValue& p);

struct TopologyReport {
  std::uint64_t ideals = 0;  // size of the ideal family used for the laws
  Verdict whole_and_empty;   // V((0)) = Spec, V(R) = ∅
  Verdict intersection_law;  // V(I) ∩ V(J) = V(I + J)
  Verdict union_law;         // V(I) ∪ V(J) = V(IJ), approximate product
  Verdict t0;
  /// T1 both ways: every {P} closed, and no strict inclusion P ⊊ Q.
  bool t1_closed_points = false;
  bool t1_maximal = false;
  std::string t1_witness;
  bool t1_agree() const { return t1_closed_points == t1_maximal; }
  Verdict quasi_compact;
  std::size_t subcover_size = 0;
  bool discrete = false;
  /// Every prime satisfies cl(P) = P.
  Verdict primes_closed;
  /// Every proper cl-closed approximate ideal lies in some prime.
  Verdict closed_ideals_under_primes;
};

TopologyReport topology_check(const Spectrum& sp, std::uint64_t seed = kDefaultSeed);

}  // namespace approx
