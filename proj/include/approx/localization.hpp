#pragma once

#include "approx/axioms.hpp"
#include "approx/hom.hpp"
#include "approx/ideal_theory.hpp"
#include "approx/spectrum.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace approx {

/// Multiplicative closure of a generator list, 1 included.
struct MultSet {
  ElemSet elements;
  std::vector<Index> generators;
  std::vector<Index> members() const { return approx::members(elements); }
};
MultSet mult_set(const FiniteRing& r, const std::vector<Index>& generators);

namespace detail {
struct LocalData;
}

/// S^-1 R over a finite base. Pairs (a, s) are indexed a * |S| + j where s is
/// the j-th member of S; classes are numbered by their least pair.
struct LocalizedRing {
  ApproxRing base;
  /// m when the base is the residue model Z/m of Z with a shift by mZ.
  std::optional<std::uint64_t> z_model;
  MultSet S;
  std::vector<Index> s_list;
  std::vector<Index> class_of;                  // pair -> class
  std::vector<std::pair<Index, Index>> reps;    // class -> (a, s)
  std::shared_ptr<const FiniteRing> ring;       // null unless well defined
  Verdict equivalence;
  Verdict well_defined;
  std::optional<std::string> ring_axioms_violation;
  SetClosure cl;                                // transferred closure on classes
  std::vector<Index> iota;                      // x -> class of x/1
  std::string name;
  std::shared_ptr<const detail::LocalData> data;

  std::size_t size() const { return reps.size(); }
  std::size_t pairs() const { return class_of.size(); }
  Index pair_index(Index a, std::size_t j) const {
    return static_cast<Index>(a * s_list.size() + j);
  }
  /// The localized ring with its transferred closure. PreconditionError
  /// ("not-well-defined") when the operations failed the check.
  ApproxRing approx() const;
  RingHom iota_hom() const;
};

/// Pair count above which localization refuses to build (ResourceLimit).
inline constexpr std::size_t kMaxLocalPairs = 4096;

LocalizedRing localize(const ApproxRing& base, const std::vector<Index>& generators,
                       bool parallel = true);
/// Finite rings directly; Z with shift:J=m or setshift:J=m (m > 0) through
/// the residue model Z/m with gen or the identity closure.
LocalizedRing localize(const ClosureSpec& cl, const std::vector<RingElem>& generators,
                       bool parallel = true);

/// Pairs (a, s) that qualify under the transferred closure of a set of classes.
ElemSet transferred_pairs(const LocalizedRing& l, const ElemSet& classes);
/// Whether every class is all-in or all-out in transferred_pairs, for every
/// set of classes in the mode's domain.
struct RepIndependence {
  Verdict verdict;
  std::uint64_t sets = 0;
};
RepIndependence check_rep_independence(const LocalizedRing& l, const AxiomMode& mode,
                                       bool parallel = true);

AxiomReport check_transfer_axioms(const LocalizedRing& l, const AxiomMode& mode,
                                  const CheckOptions& opt = {});

/// ι(cl_R(X)) ⊆ cl_S(ι(X)) over X from `mode_r` on R, and
/// ι^-1(cl_S(B)) ⊆ cl_R(ι^-1(B)) over B from `mode_s` on S^-1 R.
struct IotaCheck {
  Verdict image_morphic;
  Verdict preimage_continuous;
  bool holds() const { return image_morphic.holds && preimage_continuous.holds; }
};
IotaCheck check_iota_functorial(const LocalizedRing& l, const AxiomMode& mode_r,
                                const AxiomMode& mode_s);

struct Extension {
  ElemSet ideal;  // classes p/s with p in P
  bool meets_s = false;
  bool proper = false;
  std::optional<Verdict> prime;  // when P ∩ S = ∅
};
Extension extend(const LocalizedRing& l, const ElemSet& p);

struct Contraction {
  ElemSet ideal;  // ι^-1(p)
  std::optional<Verdict> prime;  // when p is approximately prime
};
Contraction contract(const LocalizedRing& l, const ElemSet& p);

/// {P ∈ Spec(R) : P ∩ S = ∅} against Spec(S^-1 R): both round trips and
/// inclusion order.
struct Bijection {
  Verdict verdict;
  std::vector<std::pair<std::string, std::string>> pairs;  // P, P^e
  std::size_t base_primes = 0;    // all of Spec(R)
  std::size_t avoiding = 0;       // P ∩ S = ∅
  std::size_t local_primes = 0;   // Spec(S^-1 R)
};
Bijection check_ext_contr_bijection(const LocalizedRing& l);

/// Z/m-model subgroups print as (g) with g | m.
std::string format_base_ideal(const LocalizedRing& l, const ElemSet& s);

// ---------------------------------------------------------------- radicals

/// rad(I) = {g : g^n ∈ cl(I) for some n >= 1}, found by running each power
/// sequence until it cycles. `max_exponent` is the largest least n that
/// was needed; the |R| bound is checked, not assumed.
struct RadicalResult {
  ElemSet radical;
  std::uint64_t max_exponent = 0;
  bool within_bound = true;
};
RadicalResult radical(const ApproxRing& ar, const ElemSet& i);
/// Intersection of the primes; the whole ring for an empty spectrum.
ElemSet prime_radical(const ApproxRing& ar, const Spectrum& sp);

struct RadNil {
  bool equal = false;
  std::string rad;   // rad(0)
  std::string prim;  // ∩ Spec
};
RadNil check_rad_eq_nil(const ApproxRing& ar);
RadNil check_rad_eq_nil(const LocalizedRing& l);

/// Z with gen or a (set) shift by m: rad((d)) = (radical(gcd(d, m))).
std::uint64_t z_radical(const ClosureSpec& cl, std::uint64_t d);
/// lcm of the spectrum's generators; 0 if (0) is among them.
std::uint64_t z_prime_radical(const Spectrum& sp);
RadNil z_check_rad_eq_nil(const ClosureSpec& cl);

}  // namespace approx
