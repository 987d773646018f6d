#pragma once

#include "approx/ideal.hpp"
#include "approx/polynomial.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace approx {

using Point = std::vector<std::uint32_t>;

/// cl(A) = <A>.
struct GeneratedIdeal {};
/// cl(A) = <A> + J.
struct IdealShift {
  IdealRep J;
};
/// cl(A) = A + J (no ideal generation; the empty set stays empty).
struct SetShift {
  IdealRep J;
};
/// Function rings: cl(A) = I(V(A)).
struct PointwiseEval {};
/// Function rings: f in cl(A) iff f vanishes on V(A) ∩ Σ for every Σ.
struct Sampling {
  std::vector<std::vector<Point>> family;
};
struct TolerancePoint {
  std::vector<BigInt> point;
  Rational tau;
};
/// Integer-coefficient polynomials: f in cl(A) iff |f(a)| <= τ(a) at every
/// configured point a where all of A vanishes. Membership only.
struct Tolerance {
  std::vector<TolerancePoint> points;
};

using ClosureKind =
    std::variant<GeneratedIdeal, IdealShift, SetShift, PointwiseEval, Sampling, Tolerance>;

class ClosureSpec {
 public:
  ClosureSpec(Ring ring, ClosureKind kind);

  /// `gen` | `shift:J=<gens>` | `setshift:J=<gens>` | `pointwise` |
  /// `sample:[{pts},...]` | `tol:[{point:(..),tau:q},...]`
  static ClosureSpec parse(const Ring& ring, std::string_view text);

  const Ring& ring() const { return ring_; }
  const ClosureKind& kind() const { return kind_; }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(kind_);
  }
  std::string to_string() const;
  /// Evaluable on sets (everything but Sampling and Tolerance).
  bool set_valued() const;

 private:
  Ring ring_;
  ClosureKind kind_;
};

/// cl(A) for a set A (finite rings) or a principal subgroup (Z, Z^k).
Subset closure_eval(const ClosureSpec& cl, const Subset& a);
/// cl(A) where A is the set of listed elements.
Subset closure_eval(const ClosureSpec& cl, const std::vector<RingElem>& a);

bool closure_member(const ClosureSpec& cl, const RingElem& x, const std::vector<RingElem>& a);
bool closure_member(const ClosureSpec& cl, const RingElem& x, const Subset& a);

bool tolerance_member(const Tolerance& tol, const IntPoly& f, const std::vector<IntPoly>& a);
/// Same with every τ(a) multiplied by |scale(a)|.
bool tolerance_member_scaled(const Tolerance& tol, const IntPoly& f,
                             const std::vector<IntPoly>& a, const IntPoly& scale);

/// A closure as a map on element sets of one finite ring (or carrier).
using SetClosure = std::function<ElemSet(const ElemSet&)>;

/// Compiles any closure except Tolerance over a finite ring. Sampling is
/// materialized by filtering the whole ring with its membership test.
SetClosure compile_closure(const ClosureSpec& cl);

/// Closure of principal subgroups of Z / Z^k.
Principal principal_closure(const ClosureSpec& cl, const Principal& a);

/// Zero set of a family of function-ring elements, as a bitset over point indices.
boost::dynamic_bitset<> zero_set(const Ring& fun_ring, const std::vector<RingElem>& fs);

}  // namespace approx
