#include "approx/closure.hpp"

#include "approx/errors.hpp"

#include <algorithm>
#include <cctype>

namespace approx {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t offset_in(std::string_view whole, std::string_view part) {
  return static_cast<std::size_t>(part.data() - whole.data());
}

std::string join_elems(const std::vector<RingElem>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += xs[i].to_string();
  }
  return s;
}

// Strips `open`...`close` around `s`, or fails at `base`.
std::string_view unwrap(std::string_view s, char open, char close, std::size_t base,
                        const char* what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw ParseError(std::string("closure: expected ") + what, base);
  return s.substr(1, s.size() - 2);
}

std::vector<BigInt> parse_int_tuple(std::string_view whole, std::string_view s) {
  std::string_view t = trim(s);
  std::size_t base = offset_in(whole, t);
  if (!t.empty() && t.front() == '(') t = unwrap(t, '(', ')', base, "a point (a,b,...)");
  std::vector<BigInt> out;
  for (auto part : split_top_level(t)) {
    auto p = trim(part);
    try {
      out.push_back(parse_bigint(std::string(p)));
    } catch (const ParseError& e) {
      throw ParseError("closure: " + e.message(), offset_in(whole, p) + e.position());
    }
  }
  return out;
}

Point parse_point(const Ring& ring, std::string_view whole, std::string_view s) {
  auto coords = parse_int_tuple(whole, s);
  if (coords.size() != ring.nvars())
    throw ParseError("closure: point has " + std::to_string(coords.size()) +
                         " coordinates, ring has " + std::to_string(ring.nvars()) + " variables",
                     offset_in(whole, s));
  Point pt;
  for (const auto& c : coords) {
    if (c < 0 || c >= ring.prime())
      throw ParseError("closure: point coordinate out of range", offset_in(whole, s));
    pt.push_back(c.convert_to<std::uint32_t>());
  }
  return pt;
}

std::vector<std::vector<Point>> parse_family(const Ring& ring, std::string_view whole,
                                             std::string_view body) {
  std::vector<std::vector<Point>> family;
  if (trim(body).empty()) return family;
  for (auto part : split_top_level(body)) {
    auto inner = unwrap(part, '{', '}', offset_in(whole, trim(part)), "a point set {..}");
    std::vector<Point> pts;
    if (!trim(inner).empty())
      for (auto ps : split_top_level(inner)) pts.push_back(parse_point(ring, whole, ps));
    family.push_back(std::move(pts));
  }
  return family;
}

Tolerance parse_tolerance(std::string_view whole, std::string_view body) {
  Tolerance tol;
  if (trim(body).empty()) return tol;
  std::size_t nvars = 0;
  for (auto part : split_top_level(body)) {
    auto inner = unwrap(part, '{', '}', offset_in(whole, trim(part)), "{point:(..),tau:q}");
    std::optional<std::vector<BigInt>> point;
    std::optional<Rational> tau;
    for (auto field : split_top_level(inner)) {
      auto f = trim(field);
      auto colon = f.find(':');
      if (colon == std::string_view::npos)
        throw ParseError("closure: expected key:value", offset_in(whole, f));
      auto key = trim(f.substr(0, colon));
      auto val = trim(f.substr(colon + 1));
      if (key == "point") {
        point = parse_int_tuple(whole, val);
      } else if (key == "tau") {
        auto slash = val.find('/');
        try {
          BigInt num = parse_bigint(std::string(trim(val.substr(0, slash))));
          BigInt den = slash == std::string_view::npos
                           ? BigInt(1)
                           : parse_bigint(std::string(trim(val.substr(slash + 1))));
          if (den <= 0) throw ParseError("tau denominator must be positive", 0);
          tau = Rational(num, den);
        } catch (const ParseError& e) {
          throw ParseError("closure: " + e.message(), offset_in(whole, val));
        }
        if (*tau < 0) throw ParseError("closure: tau must be >= 0", offset_in(whole, val));
      } else {
        throw ParseError("closure: unknown key '" + std::string(key) + "'", offset_in(whole, f));
      }
    }
    if (!point || !tau)
      throw ParseError("closure: tolerance entries need point and tau", offset_in(whole, part));
    if (nvars == 0) nvars = point->size();
    if (point->size() != nvars)
      throw ParseError("closure: tolerance points differ in dimension", offset_in(whole, part));
    tol.points.push_back({std::move(*point), std::move(*tau)});
  }
  return tol;
}

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::string format_rational(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt d = denominator(q);
  return d == 1 ? numerator(q).str() : numerator(q).str() + "/" + d.str();
}

void require_function_ring(const Ring& r, const char* what) {
  if (r.kind() != RingKind::Function)
    throw Unsupported(std::string(what) + " closures are defined on function rings only");
}

// Zero sets of every element, indexed by element index.
std::vector<boost::dynamic_bitset<>> all_zero_sets(const Ring& ring) {
  const auto& fr = ring.finite();
  std::vector<boost::dynamic_bitset<>> z(fr.size(), boost::dynamic_bitset<>(ring.num_points()));
  for (Index i = 0; i < fr.size(); ++i) {
    const auto dg = element_at(ring, i).digits();
    for (std::size_t j = 0; j < dg.size(); ++j) z[i][j] = dg[j] == 0;
  }
  return z;
}

SetClosure vanishing_closure(const Ring& ring, boost::dynamic_bitset<> cover) {
  auto fr = ring.finite_ptr();
  auto zeros = std::make_shared<std::vector<boost::dynamic_bitset<>>>(all_zero_sets(ring));
  return [fr, zeros, cover](const ElemSet& a) {
    boost::dynamic_bitset<> v = cover;
    for (auto i = a.find_first(); i != ElemSet::npos; i = a.find_next(i)) v &= (*zeros)[i];
    ElemSet out(fr->size());
    for (Index g = 0; g < fr->size(); ++g)
      if (v.is_subset_of((*zeros)[g])) out.set(g);
    return out;
  };
}

}  // namespace

ClosureSpec::ClosureSpec(Ring ring, ClosureKind kind) : ring_(std::move(ring)), kind_(std::move(kind)) {
  auto check_j = [&](const IdealRep& j) {
    if (j.ring != ring_) throw DomainMismatch("closure ideal J lives in another ring");
  };
  if (auto* s = std::get_if<IdealShift>(&kind_)) check_j(s->J);
  if (auto* s = std::get_if<SetShift>(&kind_)) check_j(s->J);
  if (is<PointwiseEval>()) require_function_ring(ring_, "pointwise");
  if (auto* s = std::get_if<Sampling>(&kind_)) {
    require_function_ring(ring_, "sampling");
    for (const auto& sigma : s->family)
      for (const auto& pt : sigma) point_index(ring_, pt);
  }
  if (auto* t = std::get_if<Tolerance>(&kind_))
    for (const auto& p : t->points)
      if (p.tau < 0) throw PreconditionError("negative-tolerance", "tau must be >= 0");
}

ClosureSpec ClosureSpec::parse(const Ring& ring, std::string_view text) {
  std::string_view t = trim(text);
  std::size_t base = offset_in(text, t);
  auto gens_after = [&](std::string_view prefix) {
    std::string_view rest = t.substr(prefix.size());
    try {
      return parse_element_list(ring, rest);
    } catch (const ParseError& e) {
      throw ParseError("closure: " + e.message(), base + prefix.size() + e.position());
    }
  };
  if (t == "gen") return ClosureSpec(ring, GeneratedIdeal{});
  if (t == "pointwise") {
    if (ring.kind() != RingKind::Function)
      throw ParseError("closure: pointwise requires a function ring", base);
    return ClosureSpec(ring, PointwiseEval{});
  }
  if (t.rfind("shift:J=", 0) == 0)
    return ClosureSpec(ring, IdealShift{ideal_generated(ring, gens_after("shift:J="))});
  if (t.rfind("setshift:J=", 0) == 0)
    return ClosureSpec(ring, SetShift{ideal_generated(ring, gens_after("setshift:J="))});
  if (t.rfind("sample:", 0) == 0) {
    if (ring.kind() != RingKind::Function)
      throw ParseError("closure: sample requires a function ring", base);
    auto body = unwrap(t.substr(7), '[', ']', base + 7, "[...] after sample:");
    return ClosureSpec(ring, Sampling{parse_family(ring, text, body)});
  }
  if (t.rfind("tol:", 0) == 0) {
    auto body = unwrap(t.substr(4), '[', ']', base + 4, "[...] after tol:");
    return ClosureSpec(ring, parse_tolerance(text, body));
  }
  throw ParseError(
      "closure: unknown closure; expected gen, shift:J=, setshift:J=, pointwise, sample:[..] "
      "or tol:[..]",
      base);
}

std::string ClosureSpec::to_string() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GeneratedIdeal>) {
          return "gen";
        } else if constexpr (std::is_same_v<K, IdealShift>) {
          return "shift:J=" + join_elems(k.J.generators);
        } else if constexpr (std::is_same_v<K, SetShift>) {
          return "setshift:J=" + join_elems(k.J.generators);
        } else if constexpr (std::is_same_v<K, PointwiseEval>) {
          return "pointwise";
        } else if constexpr (std::is_same_v<K, Sampling>) {
          std::string s = "sample:[";
          for (std::size_t i = 0; i < k.family.size(); ++i) {
            if (i) s += ",";
            s += "{";
            for (std::size_t j = 0; j < k.family[i].size(); ++j) {
              if (j) s += ",";
              s += format_point(k.family[i][j]);
            }
            s += "}";
          }
          return s + "]";
        } else {
          std::string s = "tol:[";
          for (std::size_t i = 0; i < k.points.size(); ++i) {
            if (i) s += ",";
            s += "{point:(";
            for (std::size_t j = 0; j < k.points[i].point.size(); ++j) {
              if (j) s += ",";
              s += k.points[i].point[j].str();
            }
            s += "),tau:" + format_rational(k.points[i].tau) + "}";
          }
          return s + "]";
        }
      },
      kind_);
}

bool ClosureSpec::set_valued() const { return !is<Sampling>() && !is<Tolerance>(); }

Principal principal_closure(const ClosureSpec& cl, const Principal& a) {
  if (cl.ring().is_finite()) throw DomainMismatch("principal closure on a finite ring");
  if (cl.is<GeneratedIdeal>()) return a;
  const IdealRep* j = nullptr;
  if (cl.is<IdealShift>()) j = &cl.as<IdealShift>().J;
  if (cl.is<SetShift>()) j = &cl.as<SetShift>().J;
  if (!j) {
    if (cl.is<Tolerance>()) throw ClosureNotSetValued("tolerance closures are membership-only");
    throw Unsupported("closure " + cl.to_string() + " is not defined on " + cl.ring().to_string());
  }
  Principal out = a;
  const auto& jg = j->canonical.principal().gens;
  for (std::size_t i = 0; i < out.gens.size(); ++i) out.gens[i] = gcd(out.gens[i], jg[i]);
  return out;
}

SetClosure compile_closure(const ClosureSpec& cl) {
  const Ring& ring = cl.ring();
  if (!ring.is_finite())
    throw NotEnumerable("set closures need a finite ring; " + ring.to_string() + " is infinite");
  auto fr = ring.finite_ptr();
  return std::visit(
      [&](const auto& k) -> SetClosure {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GeneratedIdeal>) {
          return [fr](const ElemSet& a) { return fr->ideal_closure(a); };
        } else if constexpr (std::is_same_v<K, IdealShift>) {
          ElemSet j = k.J.canonical.set();
          return [fr, j](const ElemSet& a) { return fr->sumset(fr->ideal_closure(a), j); };
        } else if constexpr (std::is_same_v<K, SetShift>) {
          ElemSet j = k.J.canonical.set();
          return [fr, j](const ElemSet& a) { return fr->sumset(a, j); };
        } else if constexpr (std::is_same_v<K, PointwiseEval>) {
          boost::dynamic_bitset<> all(ring.num_points());
          all.set();
          return vanishing_closure(ring, all);
        } else if constexpr (std::is_same_v<K, Sampling>) {
          boost::dynamic_bitset<> cover(ring.num_points());
          for (const auto& sigma : k.family)
            for (const auto& pt : sigma) cover.set(point_index(ring, pt));
          return vanishing_closure(ring, cover);
        } else {
          throw ClosureNotSetValued("tolerance closures are membership-only");
        }
      },
      cl.kind());
}

Subset closure_eval(const ClosureSpec& cl, const Subset& a) {
  if (a.ring() != cl.ring()) throw DomainMismatch("subset and closure live in different rings");
  if (!cl.set_valued())
    throw ClosureNotSetValued("closure " + cl.to_string() +
                              " only answers membership queries; use closure_member");
  if (!a.is_set()) return Subset(cl.ring(), principal_closure(cl, a.principal()));
  return Subset(cl.ring(), compile_closure(cl)(a.set()));
}

Subset closure_eval(const ClosureSpec& cl, const std::vector<RingElem>& a) {
  if (cl.ring().is_finite()) return closure_eval(cl, Subset(cl.ring(), to_elem_set(cl.ring(), a)));
  if (cl.is<SetShift>())
    throw Unsupported("set shift of a finite subset of " + cl.ring().to_string() +
                      " is not a principal subgroup; use closure_member");
  return closure_eval(cl, ideal_generated(cl.ring(), a).canonical);
}

bool closure_member(const ClosureSpec& cl, const RingElem& x, const std::vector<RingElem>& a) {
  if (x.ring() != cl.ring()) throw DomainMismatch("element and closure live in different rings");
  if (cl.is<Tolerance>())
    throw Unsupported("tolerance membership takes integer polynomials; use tolerance_member");
  if (cl.ring().is_finite()) {
    ElemSet s = compile_closure(cl)(to_elem_set(cl.ring(), a));
    return s.test(x.index());
  }
  if (cl.is<SetShift>()) {
    const auto& j = cl.as<SetShift>().J;
    return std::any_of(a.begin(), a.end(), [&](const RingElem& y) { return j.contains(x - y); });
  }
  return closure_eval(cl, a).contains(x);
}

bool closure_member(const ClosureSpec& cl, const RingElem& x, const Subset& a) {
  if (x.ring() != cl.ring()) throw DomainMismatch("element and closure live in different rings");
  if (a.is_set()) {
    if (cl.is<Tolerance>())
      throw Unsupported("tolerance membership takes integer polynomials; use tolerance_member");
    return compile_closure(cl)(a.set()).test(x.index());
  }
  return closure_eval(cl, a).contains(x);
}

bool tolerance_member_scaled(const Tolerance& tol, const IntPoly& f,
                             const std::vector<IntPoly>& a, const IntPoly& scale) {
  for (const auto& tp : tol.points) {
    bool in_v = std::all_of(a.begin(), a.end(),
                            [&](const IntPoly& g) { return g.eval(tp.point) == 0; });
    if (!in_v) continue;
    Rational bound = tp.tau * Rational(abs(scale.eval(tp.point)));
    if (Rational(abs(f.eval(tp.point))) > bound) return false;
  }
  return true;
}

bool tolerance_member(const Tolerance& tol, const IntPoly& f, const std::vector<IntPoly>& a) {
  std::uint32_t n = tol.points.empty() ? f.nvars() : static_cast<std::uint32_t>(tol.points[0].point.size());
  return tolerance_member_scaled(tol, f, a, IntPoly::constant(n, 1));
}

boost::dynamic_bitset<> zero_set(const Ring& fun_ring, const std::vector<RingElem>& fs) {
  require_function_ring(fun_ring, "zero sets of");
  boost::dynamic_bitset<> v(fun_ring.num_points());
  v.set();
  for (const auto& f : fs) {
    if (f.ring() != fun_ring) throw DomainMismatch("function from another ring");
    const auto& dg = f.digits();
    for (std::size_t j = 0; j < dg.size(); ++j)
      if (dg[j] != 0) v.reset(j);
  }
  return v;
}

}  // namespace approx
