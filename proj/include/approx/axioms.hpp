#pragma once

#include "approx/closure.hpp"
#include "approx/finite_ring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace approx {

/// A finite abelian group with a finite family of additive self-maps (the
/// scalar action). Rings act on themselves by multiplication; modules by
/// their scalar ring. Axiom checks only need this much structure.
struct Carrier {
  std::size_t size = 0;
  std::vector<Index> add;  // size * size
  std::vector<Index> neg;
  Index zero = 0;
  std::vector<std::vector<Index>> actions;
  std::vector<std::string> action_labels;
  std::vector<std::string> labels;

  static Carrier of_ring(const FiniteRing& ring);

  Index plus(Index a, Index b) const { return add[a * size + b]; }
  ElemSet sumset(const ElemSet& a, const ElemSet& b) const;
  ElemSet image(std::size_t action, const ElemSet& a) const;
  ElemSet subgroup_closure(const ElemSet& gens) const;
  bool is_subgroup(const ElemSet& s) const;
  /// Subgroup stable under every action (ideal / submodule).
  bool is_stable(const ElemSet& s) const;
  /// Smallest stable subgroup containing `gens`.
  ElemSet stable_closure(const ElemSet& gens) const;
  std::string format(const ElemSet& s) const;
};

/// Every additive subgroup of the carrier, sorted by bits. ResourceLimit
/// when the carrier has more than `guard` elements.
std::vector<ElemSet> enumerate_subgroups(const Carrier& c, std::size_t guard);

enum class Axiom { C1, C2, C3, C4a, C4b, Absorption };
inline constexpr Axiom kAllAxioms[] = {Axiom::C1,  Axiom::C2,  Axiom::C3,
                                       Axiom::C4a, Axiom::C4b, Axiom::Absorption};

/// "C1".."C4b","absorption", or "CM1".."CM4b" for module closures.
std::string axiom_name(Axiom a, bool module_names = false);

struct Counterexample {
  Axiom axiom;
  ElemSet a;
  std::optional<ElemSet> b;         // C2 (A ⊆ B) and C4a
  std::optional<std::size_t> action;  // C4b, absorption
  Index witness = 0;                // in the left side, missing from the right side
  // Z and Z^k instances: A (and B) as principal subgroups, the scalar as a tuple.
  std::vector<Principal> principals;
  std::vector<BigInt> scalar;
  bool minkowski = false;  // which reading of "+" produced it
  std::string text;
};

struct AxiomVerdict {
  Axiom axiom;
  bool pass = true;
  std::uint64_t domain = 0;  // instances in the quantification domain
  std::optional<Counterexample> counterexample;
};

struct AxiomMode {
  enum Kind { Exhaustive, Subgroups, Sampled } kind = Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  static AxiomMode exhaustive() { return {Exhaustive, 0, 0}; }
  static AxiomMode subgroups() { return {Subgroups, 0, 0}; }
  static AxiomMode sampled(std::uint64_t seed, std::uint64_t count) {
    return {Sampled, seed, count};
  }
  std::string name() const;
};

inline constexpr std::uint64_t kDefaultSeed = 0xA16EB7A;
inline constexpr std::uint64_t kDefaultSampleCount = 2000;
inline constexpr std::uint64_t kDefaultPairCap = std::uint64_t{1} << 26;
inline constexpr std::size_t kExhaustiveMaxSize = 16;

struct AxiomReport {
  AxiomMode mode;
  bool bounded = false;  // Z: a finite window of an infinite domain
  std::string domain_note;
  std::vector<AxiomVerdict> verdicts;
  bool all_pass() const;
  const AxiomVerdict& get(Axiom a) const;
};

/// How "X + Y" is read in C4a. Subgroup: the additive subgroup generated by
/// X ∪ Y. Minkowski: the element-wise sums {x + y}. The two agree whenever X
/// and Y are subgroups.
enum class SumReading { Subgroup, Minkowski };

struct CheckOptions {
  bool parallel = true;
  SumReading sum = SumReading::Subgroup;
  std::uint64_t pair_cap = kDefaultPairCap;
  std::size_t subgroup_guard = kDefaultSubgroupGuard;
  bool module_names = false;
};

/// Checks every axiom of `cl` on the carrier. Exhaustive mode needs
/// size <= 16 and quantifies over all subsets, the empty set included;
/// ResourceLimit when a pairwise axiom would exceed `pair_cap` instances.
AxiomReport check_axioms_carrier(const Carrier& c, const SetClosure& cl, const AxiomMode& mode,
                                 const CheckOptions& opt = {});

/// True when re-evaluating the counterexample reproduces the violation.
bool replay(const Carrier& c, const SetClosure& cl, const Counterexample& cx);

struct IntegerBounds {
  std::uint64_t d_max = 1000;
  std::int64_t r_max = 100;
  std::uint64_t tuple_max = 30;  // Z^k: per-coordinate generator bound
};

/// Replays a counterexample produced by check_axioms on Z or Z^k.
bool replay_integer(const ClosureSpec& cl, const Counterexample& cx);

/// Dispatch on the closure's ring: finite rings through the carrier engine,
/// Z and Z^k over principal subgroups within `bounds`.
AxiomReport check_axioms(const ClosureSpec& cl, const AxiomMode& mode,
                         const IntegerBounds& bounds = {}, const CheckOptions& opt = {});

}  // namespace approx
