#pragma once

#include "approx/closure.hpp"
#include "approx/finite_ring.hpp"
#include "approx/ideal.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace approx {

/// Outcome of a decision procedure: holds, or fails with a witness.
struct Verdict {
  bool holds = true;
  std::string witness;
  static Verdict ok() { return {}; }
  static Verdict fail(std::string w) { return {false, std::move(w)}; }
  explicit operator bool() const { return holds; }
};

/// A finite ring with a closure on its subsets. Derived rings (quotients,
/// localizations) have no Ring descriptor and live only at this level.
struct ApproxRing {
  std::shared_ptr<const FiniteRing> ring;
  SetClosure cl;
  std::string name;

  static ApproxRing of(const ClosureSpec& cl);
  const FiniteRing& r() const { return *ring; }
};

// ----------------------------------------------------------- finite rings

/// Subgroup with r*s in cl(S) for all r, s.
Verdict is_approx_ideal(const ApproxRing& ar, const ElemSet& s);

/// Exhaustive over all x, y. PreconditionError with cause "not-subgroup",
/// "not-approx-ideal" or "improper". A P with cl(P) = R fails with a witness
/// that says so.
Verdict is_approx_prime(const ApproxRing& ar, const ElemSet& p, bool parallel = true);

/// cl(<ab : a in A, b in B>).
ElemSet approx_product(const ApproxRing& ar, const ElemSet& a, const ElemSet& b);

/// Approximate ideals among all additive subgroups (guarded enumeration).
std::vector<ElemSet> approx_ideals(const ApproxRing& ar, std::size_t guard = kDefaultSubgroupGuard);

/// Classes of x ~ y <=> x - y in cl(I), with induced operations.
struct QuotientRing {
  ElemSet closure;                 // cl(I)
  std::vector<Index> class_of;     // element -> class
  std::vector<Index> reps;         // class -> least element
  std::shared_ptr<FiniteRing> ring;  // null when the operations are not well defined
  Verdict equivalence;             // ~ is an equivalence relation
  Verdict well_defined;            // + and * independent of representatives
  std::optional<std::string> ring_axioms_violation;
  std::size_t size() const { return reps.size(); }
};

/// PreconditionError("not-approx-ideal") when I fails absorption.
QuotientRing quotient_ring(const ApproxRing& ar, const ElemSet& i);

/// Factorization theorem instance: hypotheses A = BC, A approximately prime,
/// cl(A) = A; conclusion B ⊆ A or C ⊆ A.
struct FactorizationResult {
  bool hypotheses = false;
  std::string failed_hypothesis;  // first failed one, empty when all hold
  bool conclusion = false;
  /// A hypothesis-satisfying instance whose conclusion fails.
  bool counterexample() const { return hypotheses && !conclusion; }
};
FactorizationResult factorization_check(const ApproxRing& ar, const ElemSet& a, const ElemSet& b,
                                        const ElemSet& c);
/// Every triple of approximate ideals; fails with the first counterexample.
struct FactorizationScan {
  Verdict verdict;
  std::uint64_t triples = 0;
  std::uint64_t hypotheses_met = 0;
};
FactorizationScan factorization_scan(const ApproxRing& ar, bool parallel = true,
                                     std::size_t guard = kDefaultSubgroupGuard);

/// (0) approximately prime.
bool is_approx_prime_ring(const ApproxRing& ar);
/// Both sides of the prime-ring characterization, computed independently:
/// (0) prime, and aRb ⊄ cl(0) for all nonzero a, b.
struct RingPrimeCheck {
  bool prime_ring = false;
  bool condition = false;
  std::string witness;  // a, b with aRb ⊆ cl(0) when the condition fails
  bool agree() const { return prime_ring == condition; }
};
RingPrimeCheck check_thm_ring_prime(const ApproxRing& ar);

// --------------------------------------------------------------- Z models

/// m for shift:J=m and setshift:J=m, 0 for gen; Unsupported otherwise.
std::uint64_t z_modulus(const ClosureSpec& cl);

/// (d) approximately prime on Z by the closed form: d prime and d | m (m > 0),
/// or d = 0 or prime (m = 0). PreconditionError("improper") for d = 1.
Verdict z_is_approx_prime_closed(const ClosureSpec& cl, std::uint64_t d);
/// Brute force over x, y in [-B, B]; B = 0 selects 2m, or 2*max(d,1) when m = 0.
Verdict z_is_approx_prime_brute(const ClosureSpec& cl, std::uint64_t d, std::uint64_t bound = 0,
                                bool parallel = true);
/// Generator of cl((a)(b)).
std::uint64_t z_approx_product(const ClosureSpec& cl, std::uint64_t a, std::uint64_t b);
/// Z/(cl(I)) for I = (d); Unsupported when cl(I) = (0).
QuotientRing z_quotient_ring(const ClosureSpec& cl, std::uint64_t d);
FactorizationResult z_factorization_check(const ClosureSpec& cl, std::uint64_t a, std::uint64_t b,
                                          std::uint64_t c);
/// B, C over principal ideals with generators 0..bound, A = BC.
FactorizationScan z_factorization_scan(const ClosureSpec& cl, std::uint64_t bound = 1000,
                                       bool parallel = true);
/// Prime-ring characterization on Z with a, b, r in [-bound, bound].
RingPrimeCheck z_check_thm_ring_prime(const ClosureSpec& cl, std::uint64_t bound = 60);

// ------------------------------------------------ closure-spec dispatchers

Verdict is_approx_ideal(const ClosureSpec& cl, const Subset& s);
Verdict is_approx_prime(const ClosureSpec& cl, const Subset& p);
Subset approx_product(const ClosureSpec& cl, const Subset& a, const Subset& b);

}  // namespace approx
