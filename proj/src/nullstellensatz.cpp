#include "approx/nullstellensatz.hpp"

#include "approx/errors.hpp"
#include "detail/parallel.hpp"

#include <algorithm>

namespace approx {

namespace {

void require_fun(const Ring& fun) {
  if (fun.kind() != RingKind::Function)
    throw DomainMismatch("expected a function ring, got " + fun.to_string());
  if (fun.num_points() > kMaxNullPoints)
    throw ResourceLimit(fun.to_string() + " has " + std::to_string(fun.num_points()) +
                        " points, above the " + std::to_string(kMaxNullPoints) + " guard");
}

// Zero set of the element with each index.
PointSet zeros_of(const Ring& fun, Index i) {
  return zero_set(fun, {element_at(fun, i)});
}

PointSet common_zeros(const Ring& fun, const ElemSet& s) {
  PointSet v(fun.num_points());
  v.set();
  for (Index i : members(s)) v &= zeros_of(fun, i);
  return v;
}

std::string format_elem(const FiniteRing& fr, const ElemSet& s) { return fr.format_set(s); }

}  // namespace

Variety variety(const Ring& fun, const ElemSet& generators) {
  require_fun(fun);
  const auto& fr = fun.finite();
  return {common_zeros(fun, fr.ideal_closure(generators)), common_zeros(fun, generators)};
}

ElemSet vanishing_ideal(const Ring& fun, const PointSet& w) {
  require_fun(fun);
  const auto& fr = fun.finite();
  ElemSet out(fr.size());
  for (Index i = 0; i < fr.size(); ++i)
    if (w.is_subset_of(zeros_of(fun, i))) out.set(i);
  return out;
}

ElemSet point_ideal(const Ring& fun, const Point& a) {
  require_fun(fun);
  const std::uint32_t p = fun.prime(), n = fun.nvars();
  if (a.size() != n) throw DomainMismatch("point has wrong dimension");
  const auto& fr = fun.finite();
  ElemSet gens(fr.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string x = n == 1 ? "x" : "x" + std::to_string(i + 1);
    std::uint32_t c = (p - a[i] % p) % p;
    std::string text = c == 0 ? x : x + "+" + std::to_string(c);
    gens.set(fun.parse_element(text).index());
  }
  return fr.ideal_closure(gens);
}

std::string format_points(const Ring& fun, const PointSet& w) {
  std::string out = "{";
  for (auto j = w.find_first(); j != PointSet::npos; j = w.find_next(j)) {
    if (out.size() > 1) out += ", ";
    auto pt = point_at(fun, j);
    out += "(";
    for (std::size_t k = 0; k < pt.size(); ++k) out += (k ? "," : "") + std::to_string(pt[k]);
    out += ")";
  }
  return out + "}";
}

RadicalResult rad_phi(const ApproxRing& ar, const ElemSet& i) { return radical(ar, i); }

FunctionClosure FunctionClosure::of(const ClosureSpec& cl) {
  require_fun(cl.ring());
  // Sampling is materialized over the finite ring; tolerance is membership only.
  if (cl.is<Tolerance>())
    throw Unsupported("closure " + cl.to_string() + " cannot be evaluated on sets");
  return {cl.ring(), ApproxRing::of(cl)};
}

EsepResult check_esep(const FunctionClosure& fc, const std::vector<ElemSet>& ideals,
                      bool parallel) {
  struct One {
    std::optional<std::string> fail;
    std::uint64_t functions = 0;
    std::uint64_t exponent = 0;
  };
  std::vector<One> per(ideals.size());
  const auto& fr = fc.ar.r();
  detail::for_each_index(ideals.size(), parallel, [&](std::uint64_t k) {
    const ElemSet& i = ideals[k];
    ElemSet ivi = vanishing_ideal(fc.fun, variety(fc.fun, i).points);
    auto rad = rad_phi(fc.ar, i);
    per[k].functions = ivi.count();
    per[k].exponent = rad.max_exponent;
    ElemSet missing = ivi - rad.radical;
    if (missing.any()) {
      Index f = static_cast<Index>(missing.find_first());
      per[k].fail = "I = " + format_elem(fr, i) + ": " + fr.label(f) +
                    " vanishes on V(I) but no power of it lies in cl(I) = " +
                    format_elem(fr, fc.ar.cl(i));
    }
  });
  EsepResult out;
  out.ideals = ideals.size();
  for (const auto& o : per) {
    out.functions += o.functions;
    out.max_exponent = std::max(out.max_exponent, o.exponent);
    if (o.fail && out.verdict) out.verdict = Verdict::fail(*o.fail);
  }
  return out;
}

PpResult check_pp(const FunctionClosure& fc, bool parallel) {
  const auto npts = fc.fun.num_points();
  const auto& fr = fc.ar.r();
  PpResult out;
  out.points = npts;
  auto closed = detail::first_hit<std::string>(npts, parallel, [&](std::uint64_t j)
                                                                    -> std::optional<std::string> {
    ElemSet m = point_ideal(fc.fun, point_at(fc.fun, j));
    ElemSet c = fc.ar.cl(m);
    if (c == m) return std::nullopt;
    PointSet one(npts);
    one.set(j);
    return "m_a for a = " + format_points(fc.fun, one) + " is not closed: cl(m_a) = " +
           format_elem(fr, c);
  });
  if (closed) out.closed = Verdict::fail(*closed);
  auto prime = detail::first_hit<std::string>(npts, parallel, [&](std::uint64_t j)
                                                                   -> std::optional<std::string> {
    ElemSet m = point_ideal(fc.fun, point_at(fc.fun, j));
    PointSet one(npts);
    one.set(j);
    const std::string a = format_points(fc.fun, one);
    try {
      auto v = is_approx_prime(fc.ar, m, false);
      if (v) return std::nullopt;
      return "m_a for a = " + a + ": " + v.witness;
    } catch (const PreconditionError& e) {
      return "m_a for a = " + a + ": " + e.what();
    }
  });
  if (prime) out.prime = Verdict::fail(*prime);
  return out;
}

AnsSides ans_sides(const FunctionClosure& fc, const ElemSet& ideal) {
  return {rad_phi(fc.ar, ideal).radical, vanishing_ideal(fc.fun, variety(fc.fun, ideal).points)};
}

AnsResult check_ans(const FunctionClosure& fc, const std::vector<ElemSet>& ideals,
                    bool parallel) {
  AnsResult out;
  out.esep = check_esep(fc, ideals, parallel);
  if (!out.esep.verdict)
    throw PreconditionError("hypothesis-not-established", "ESEP: " + out.esep.verdict.witness);
  out.pp = check_pp(fc, parallel);
  if (!out.pp.closed)
    throw PreconditionError("hypothesis-not-established", "PP: " + out.pp.closed.witness);
  if (!out.pp.prime)
    throw PreconditionError("hypothesis-not-established", "PP: " + out.pp.prime.witness);
  out.ideals = ideals.size();
  const auto& fr = fc.ar.r();
  auto hit = detail::first_hit<std::string>(ideals.size(), parallel, [&](std::uint64_t k)
                                                                         -> std::optional<std::string> {
    auto s = ans_sides(fc, ideals[k]);
    if (s.equal()) return std::nullopt;
    return "I = " + format_elem(fr, ideals[k]) + ": rad(I) = " + format_elem(fr, s.rad) +
           " but I(V(I)) = " + format_elem(fr, s.ivi);
  });
  if (hit) out.equality = Verdict::fail(*hit);
  return out;
}

Verdict check_galois(const Ring& fun, const std::vector<ElemSet>& ideals,
                     const std::vector<PointSet>& point_sets) {
  require_fun(fun);
  const auto& fr = fun.finite();
  for (const auto& i : ideals) {
    PointSet v = variety(fun, i).points;
    if (variety(fun, vanishing_ideal(fun, v)).points != v)
      return Verdict::fail("V(I(V(I))) != V(I) for I = " + format_elem(fr, i));
    for (const auto& w : point_sets) {
      bool left = w.is_subset_of(v);
      bool right = i.is_subset_of(vanishing_ideal(fun, w));
      if (left != right)
        return Verdict::fail("W = " + format_points(fun, w) + ", I = " + format_elem(fr, i) +
                             ": W ⊆ V(I) is " + (left ? "true" : "false") +
                             " but I ⊆ I(W) is " + (right ? "true" : "false"));
    }
  }
  for (const auto& w : point_sets) {
    ElemSet iw = vanishing_ideal(fun, w);
    if (vanishing_ideal(fun, variety(fun, iw).points) != iw)
      return Verdict::fail("I(V(I(W))) != I(W) for W = " + format_points(fun, w));
  }
  return Verdict::ok();
}

std::vector<RemarkFinding> search_esep_without_pp(const Ring& fun, bool parallel) {
  require_fun(fun);
  const auto& fr = fun.finite();
  std::vector<std::string> closures{"gen", "pointwise"};
  for (Index f = 0; f < fr.size(); ++f) {
    closures.push_back("shift:J=" + fr.label(f));
    closures.push_back("setshift:J=" + fr.label(f));
  }
  std::vector<RemarkFinding> out;
  for (const auto& text : closures) {
    auto fc = FunctionClosure::of(ClosureSpec::parse(fun, text));
    auto ideals = enumerate_ideals(fr, fr.size());
    if (!check_esep(fc, ideals, parallel).verdict) continue;
    for (const auto& i : ideals) {
      auto s = ans_sides(fc, i);
      if (s.equal()) continue;
      auto pp = check_pp(fc, parallel);
      out.push_back({text, format_elem(fr, i), format_elem(fr, s.rad), format_elem(fr, s.ivi),
                     pp.closed ? pp.prime : pp.closed});
      break;
    }
  }
  return out;
}

std::vector<ToleranceCase> tolerance_grid() {
  auto pt = [](long a, Rational tau) { return TolerancePoint{{BigInt(a)}, tau}; };
  const std::vector<Tolerance> profiles{
      {{pt(-2, 1), pt(-1, 1), pt(0, 1), pt(1, 1), pt(2, 1), pt(3, 1)}},
      {{pt(-2, 0), pt(-1, 0), pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)}},
      {{pt(-2, 1), pt(-1, Rational(1, 2)), pt(0, 0), pt(1, Rational(1, 2)), pt(2, 1),
        pt(3, Rational(3, 2))}},
      {{pt(0, 1), pt(1, Rational(1, 2)), pt(2, 3), pt(-1, 0), pt(3, Rational(5, 3))}},
  };
  const char* ideals[] = {"x^2-x", "x", "x^3-x", "x-2", "0"};
  const char* multipliers[] = {"1", "-2", "x+1", "3*x^2", "x-1"};
  std::vector<IntPoly> candidates;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      candidates.push_back(IntPoly::constant(1, BigInt(a)) * IntPoly::variable(1, 0) +
                           IntPoly::constant(1, BigInt(b)));
  std::vector<ToleranceCase> grid;
  for (const auto& tol : profiles)
    for (const char* i : ideals)
      for (const char* r : multipliers)
        grid.push_back({tol, {IntPoly::parse(i, 1)}, IntPoly::parse(r, 1), candidates});
  return grid;
}

ToleranceGridResult check_tolerance_balanced(const std::vector<ToleranceCase>& grid) {
  ToleranceGridResult out;
  out.cases = grid.size();
  for (const auto& c : grid) {
    std::vector<IntPoly> ri;
    for (const auto& g : c.ideal) ri.push_back(c.r * g);
    bool unit = true;
    for (const auto& tp : c.tol.points) {
      bool in_v = std::all_of(c.ideal.begin(), c.ideal.end(),
                              [&](const IntPoly& g) { return g.eval(tp.point) == 0; });
      if (in_v && abs(c.r.eval(tp.point)) > 1) unit = false;
    }
    if (unit) ++out.unit_bounded;
    for (const auto& f : c.candidates) {
      if (!tolerance_member(c.tol, f, c.ideal)) continue;
      ++out.members;
      IntPoly rf = c.r * f;
      bool ok = tolerance_member_scaled(c.tol, rf, ri, c.r) &&
                (!unit || tolerance_member(c.tol, rf, ri));
      if (!ok && out.verdict)
        out.verdict = Verdict::fail("f = " + f.to_string() + ", r = " + c.r.to_string() +
                                    ", I = <" + c.ideal[0].to_string() + ">");
    }
  }
  return out;
}

}  // namespace approx
