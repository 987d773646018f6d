#pragma once

#include "approx/closure.hpp"
#include "approx/ideal_theory.hpp"
#include "approx/localization.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace approx {

/// Points of F_p^n as one bit per point index (x1 most significant).
using PointSet = boost::dynamic_bitset<>;

/// Points above which the function-ring checks refuse (ResourceLimit).
inline constexpr std::uint64_t kMaxNullPoints = 4096;

/// V(I) computed twice: from the listed generators and from every element
/// of the ideal they generate.
struct Variety {
  PointSet points;           // common zeros of the whole ideal
  PointSet of_generators;    // common zeros of the generators
  bool agree() const { return points == of_generators; }
};
Variety variety(const Ring& fun, const ElemSet& generators);

/// I(W): every function vanishing on W.
ElemSet vanishing_ideal(const Ring& fun, const PointSet& w);

/// m_a = <x1 - a1, ..., xn - an>, built from its generators and closed as an
/// ideal in the function ring.
ElemSet point_ideal(const Ring& fun, const Point& a);

std::string format_points(const Ring& fun, const PointSet& w);

/// rad_Φ(I) = {g : g^n ∈ cl(I) for some n >= 1}.
RadicalResult rad_phi(const ApproxRing& ar, const ElemSet& i);

/// A closure on a function ring, with the ring descriptor kept for points.
struct FunctionClosure {
  Ring fun;
  ApproxRing ar;
  /// Function ring with a set-valued closure; ResourceLimit past
  /// kMaxNullPoints points.
  static FunctionClosure of(const ClosureSpec& cl);
};

/// f vanishing on V(I) implies f ∈ rad_Φ(I), for every I in `ideals`.
struct EsepResult {
  Verdict verdict;
  std::uint64_t ideals = 0;
  std::uint64_t functions = 0;  // (I, f) pairs with f ∈ I(V(I))
  std::uint64_t max_exponent = 0;
};
EsepResult check_esep(const FunctionClosure& fc, const std::vector<ElemSet>& ideals,
                      bool parallel = true);

/// Every m_a is cl-closed and approximately prime.
struct PpResult {
  Verdict closed;
  Verdict prime;
  std::uint64_t points = 0;
  bool holds() const { return closed && prime; }
};
PpResult check_pp(const FunctionClosure& fc, bool parallel = true);

/// Both sides of rad_Φ(I) = I(V(I)) for one ideal.
struct AnsSides {
  ElemSet rad;
  ElemSet ivi;
  bool equal() const { return rad == ivi; }
  bool esep_inclusion() const { return ivi.is_subset_of(rad); }
};
AnsSides ans_sides(const FunctionClosure& fc, const ElemSet& ideal);

struct AnsResult {
  EsepResult esep;
  PpResult pp;
  Verdict equality;
  std::uint64_t ideals = 0;
};
/// ESEP on `ideals` and PP first; PreconditionError
/// ("hypothesis-not-established") when either fails. Then the equality on
/// every ideal.
AnsResult check_ans(const FunctionClosure& fc, const std::vector<ElemSet>& ideals,
                    bool parallel = true);

/// W ⊆ V(I) ⇔ I ⊆ I(W) over all pairs, and V(I(V(I))) = V(I),
/// I(V(I(W))) = I(W).
Verdict check_galois(const Ring& fun, const std::vector<ElemSet>& ideals,
                     const std::vector<PointSet>& point_sets);

/// A closure where ESEP holds on every ideal but the equality fails for some
/// ideal, with the failing ideal and PP's verdict.
struct RemarkFinding {
  std::string closure;
  std::string ideal;
  std::string rad;
  std::string ivi;
  Verdict pp;
};
/// Tries gen, shift:J=<f> and setshift:J=<f> for every f, and pointwise.
std::vector<RemarkFinding> search_esep_without_pp(const Ring& fun, bool parallel = true);

/// One case of the tolerance grid: f ∈ cl_τ(I) implies r f ∈ cl_{|r|τ}(rI),
/// and r f ∈ cl_τ(rI) when |r| <= 1 on V(I) ∩ points.
struct ToleranceCase {
  Tolerance tol;
  std::vector<IntPoly> ideal;
  IntPoly r;
  std::vector<IntPoly> candidates;
};
struct ToleranceGridResult {
  Verdict verdict;
  std::uint64_t cases = 0;
  std::uint64_t members = 0;          // (case, f) with f ∈ cl_τ(I)
  std::uint64_t unit_bounded = 0;     // cases where |r| <= 1 on V(I)
};
/// The standard grid: 4 tolerance profiles x 5 ideals x 5 multipliers over
/// univariate integer polynomials, each with 25 candidate functions.
std::vector<ToleranceCase> tolerance_grid();
ToleranceGridResult check_tolerance_balanced(const std::vector<ToleranceCase>& grid);

}  // namespace approx
