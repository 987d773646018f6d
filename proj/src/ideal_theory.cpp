#include "approx/ideal_theory.hpp"

#include "approx/errors.hpp"
#include "detail/parallel.hpp"

#include <algorithm>

namespace approx {

ApproxRing ApproxRing::of(const ClosureSpec& cl) {
  return {cl.ring().finite_ptr(), compile_closure(cl),
          cl.ring().to_string() + " with " + cl.to_string()};
}

namespace {

std::string pair_text(const FiniteRing& r, Index x, Index y) {
  return "x = " + r.label(x) + ", y = " + r.label(y);
}

}  // namespace

Verdict is_approx_ideal(const ApproxRing& ar, const ElemSet& s) {
  const auto& r = ar.r();
  if (!r.is_subgroup(s)) return Verdict::fail(r.format_set(s) + " is not an additive subgroup");
  ElemSet c = ar.cl(s);
  for (Index x : members(s))
    for (Index a = 0; a < r.size(); ++a)
      if (!c.test(r.mul(a, x)))
        return Verdict::fail("r = " + r.label(a) + ", s = " + r.label(x) + ": rs = " +
                             r.label(r.mul(a, x)) + " is not in cl(S)");
  return Verdict::ok();
}

Verdict is_approx_prime(const ApproxRing& ar, const ElemSet& p, bool parallel) {
  const auto& r = ar.r();
  if (!r.is_subgroup(p))
    throw PreconditionError("not-subgroup", r.format_set(p) + " is not an additive subgroup");
  if (auto v = is_approx_ideal(ar, p); !v)
    throw PreconditionError("not-approx-ideal", v.witness);
  if (p.all()) throw PreconditionError("improper", "P is the whole ring");
  ElemSet c = ar.cl(p);
  if (c.all()) {
    // Separate diagnostic: any x outside P already fails with y = x.
    for (Index x = 0; x < r.size(); ++x)
      if (!p.test(x))
        return Verdict::fail("cl(P) is the whole ring; " + pair_text(r, x, x) +
                             " has xy in cl(P) with x, y outside P");
  }
  const std::size_t n = r.size();
  auto hit = detail::first_hit<std::pair<Index, Index>>(
      n, parallel, [&](std::uint64_t xi) -> std::optional<std::pair<Index, Index>> {
        auto x = static_cast<Index>(xi);
        if (p.test(x)) return std::nullopt;
        for (Index y = 0; y < n; ++y)
          if (!p.test(y) && c.test(r.mul(x, y))) return std::make_pair(x, y);
        return std::nullopt;
      });
  if (!hit) return Verdict::ok();
  return Verdict::fail(pair_text(r, hit->first, hit->second) + ": xy = " +
                       r.label(r.mul(hit->first, hit->second)) +
                       " is in cl(P) but neither x nor y is in P");
}

ElemSet approx_product(const ApproxRing& ar, const ElemSet& a, const ElemSet& b) {
  const auto& r = ar.r();
  return ar.cl(r.ideal_closure(r.product_set(a, b)));
}

std::vector<ElemSet> approx_ideals(const ApproxRing& ar, std::size_t guard) {
  std::vector<ElemSet> out;
  for (auto& s : enumerate_subgroups(ar.r(), guard))
    if (is_approx_ideal(ar, s)) out.push_back(std::move(s));
  return out;
}

QuotientRing quotient_ring(const ApproxRing& ar, const ElemSet& i) {
  if (auto v = is_approx_ideal(ar, i); !v) throw PreconditionError("not-approx-ideal", v.witness);
  const auto& r = ar.r();
  const std::size_t n = r.size();
  QuotientRing q;
  q.closure = ar.cl(i);
  auto rel = [&](Index x, Index y) { return q.closure.test(r.sub(x, y)); };
  q.equivalence = Verdict::ok();
  if (!q.closure.test(r.zero()))
    q.equivalence = Verdict::fail("0 is not in cl(I), so ~ is not reflexive");
  else if (!r.is_subgroup(q.closure))
    q.equivalence = Verdict::fail("cl(I) = " + r.format_set(q.closure) +
                                  " is not a subgroup, so ~ is not transitive");
  q.class_of.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (Index x = 0; x < n; ++x) {
    if (seen[x]) continue;
    auto c = static_cast<Index>(q.reps.size());
    q.reps.push_back(x);
    for (Index y = x; y < n; ++y)
      if (!seen[y] && rel(y, x)) {
        seen[y] = true;
        q.class_of[y] = c;
      }
  }
  if (!q.equivalence) {
    q.well_defined = Verdict::fail("relation is not an equivalence");
    return q;
  }
  const std::size_t k = q.reps.size();
  std::vector<Index> add(k * k), mul(k * k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) {
      add[a * k + b] = q.class_of[r.add(q.reps[a], q.reps[b])];
      mul[a * k + b] = q.class_of[r.mul(q.reps[a], q.reps[b])];
    }
  // Every representative pair must land in the class computed from the reps.
  q.well_defined = Verdict::ok();
  for (Index x = 0; x < n && q.well_defined; ++x)
    for (Index y = 0; y < n; ++y) {
      Index cx = q.class_of[x], cy = q.class_of[y];
      if (q.class_of[r.add(x, y)] != add[cx * k + cy] ||
          q.class_of[r.mul(x, y)] != mul[cx * k + cy]) {
        q.well_defined = Verdict::fail("representatives " + r.label(x) + ", " + r.label(y) +
                                       " give a different class than " + r.label(q.reps[cx]) +
                                       ", " + r.label(q.reps[cy]));
        break;
      }
    }
  if (!q.well_defined) return q;
  std::vector<std::string> labels;
  for (Index c = 0; c < k; ++c) labels.push_back("[" + r.label(q.reps[c]) + "]");
  q.ring = std::make_shared<FiniteRing>(k, std::move(add), std::move(mul),
                                        q.class_of[r.zero()], q.class_of[r.one()],
                                        std::move(labels));
  q.ring_axioms_violation = find_ring_axiom_violation(*q.ring);
  return q;
}

FactorizationResult factorization_check(const ApproxRing& ar, const ElemSet& a, const ElemSet& b,
                                        const ElemSet& c) {
  FactorizationResult res;
  res.conclusion = b.is_subset_of(a) || c.is_subset_of(a);
  if (approx_product(ar, b, c) != a) {
    res.failed_hypothesis = "A != BC";
    return res;
  }
  if (a.all()) {
    res.failed_hypothesis = "A is not proper";
    return res;
  }
  if (!is_approx_ideal(ar, a)) {
    res.failed_hypothesis = "A is not an approximate ideal";
    return res;
  }
  if (!is_approx_prime(ar, a, false)) {
    res.failed_hypothesis = "A is not approximately prime";
    return res;
  }
  if (ar.cl(a) != a) {
    res.failed_hypothesis = "A is not cl-closed";
    return res;
  }
  res.hypotheses = true;
  return res;
}

FactorizationScan factorization_scan(const ApproxRing& ar, bool parallel, std::size_t guard) {
  const auto& r = ar.r();
  auto ideals = approx_ideals(ar, guard);
  const std::size_t k = ideals.size();
  FactorizationScan scan;
  scan.triples = k * k;  // A is determined by (B, C)
  std::vector<char> met(k * k, 0);
  auto hit = detail::first_hit<std::string>(
      k * k, parallel, [&](std::uint64_t idx) -> std::optional<std::string> {
        const auto& b = ideals[idx / k];
        const auto& c = ideals[idx % k];
        ElemSet a = approx_product(ar, b, c);
        auto res = factorization_check(ar, a, b, c);
        met[idx] = res.hypotheses;
        if (!res.counterexample()) return std::nullopt;
        return "A = " + r.format_set(a) + ", B = " + r.format_set(b) + ", C = " +
               r.format_set(c) + ": hypotheses hold but neither B nor C lies in A";
      });
  scan.hypotheses_met = static_cast<std::uint64_t>(std::count(met.begin(), met.end(), 1));
  scan.verdict = hit ? Verdict::fail(*hit) : Verdict::ok();
  return scan;
}

bool is_approx_prime_ring(const ApproxRing& ar) {
  const auto& r = ar.r();
  return static_cast<bool>(is_approx_prime(ar, r.singleton(r.zero())));
}

RingPrimeCheck check_thm_ring_prime(const ApproxRing& ar) {
  const auto& r = ar.r();
  RingPrimeCheck out;
  out.prime_ring = is_approx_prime_ring(ar);
  ElemSet c0 = ar.cl(r.singleton(r.zero()));
  out.condition = true;
  for (Index a = 0; a < r.size() && out.condition; ++a) {
    if (a == r.zero()) continue;
    for (Index b = 0; b < r.size(); ++b) {
      if (b == r.zero()) continue;
      bool inside = true;
      for (Index x = 0; x < r.size() && inside; ++x) inside = c0.test(r.mul(r.mul(a, x), b));
      if (inside) {
        out.condition = false;
        out.witness = "a = " + r.label(a) + ", b = " + r.label(b) + ": aRb ⊆ cl(0)";
        break;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------------- Z

std::uint64_t z_modulus(const ClosureSpec& cl) {
  if (cl.ring().kind() != RingKind::Integers)
    throw Unsupported("expected the ring Z, got " + cl.ring().to_string());
  if (cl.is<GeneratedIdeal>()) return 0;
  if (cl.is<IdealShift>()) return to_u64(cl.as<IdealShift>().J.canonical.generator());
  if (cl.is<SetShift>()) return to_u64(cl.as<SetShift>().J.canonical.generator());
  throw Unsupported("closure " + cl.to_string() + " has no decision procedure on Z");
}

namespace {

std::uint64_t z_cl(std::uint64_t m, std::uint64_t d) { return gcd_u64(d, m); }

// x in (d) for signed x.
bool z_in(std::uint64_t d, std::int64_t x) {
  auto ax = static_cast<std::uint64_t>(x < 0 ? -x : x);
  return d == 0 ? ax == 0 : ax % d == 0;
}

}  // namespace

Verdict z_is_approx_prime_closed(const ClosureSpec& cl, std::uint64_t d) {
  const std::uint64_t m = z_modulus(cl);
  if (d == 1) throw PreconditionError("improper", "(1) is the whole ring");
  if (m == 0) {
    if (d == 0 || is_prime(d)) return Verdict::ok();
    return Verdict::fail(std::to_string(d) + " is neither 0 nor prime");
  }
  if (!is_prime(d)) return Verdict::fail(std::to_string(d) + " is not prime");
  if (m % d != 0)
    return Verdict::fail(std::to_string(d) + " does not divide " + std::to_string(m) +
                         ", so cl(P) = Z");
  return Verdict::ok();
}

Verdict z_is_approx_prime_brute(const ClosureSpec& cl, std::uint64_t d, std::uint64_t bound,
                                bool parallel) {
  const std::uint64_t m = z_modulus(cl);
  if (d == 1) throw PreconditionError("improper", "(1) is the whole ring");
  const std::uint64_t B = bound ? bound : (m ? 2 * m : 2 * std::max<std::uint64_t>(d, 1));
  const std::uint64_t c = z_cl(m, d);
  const auto lo = -static_cast<std::int64_t>(B);
  auto hit = detail::first_hit<std::pair<std::int64_t, std::int64_t>>(
      2 * B + 1, parallel,
      [&](std::uint64_t i) -> std::optional<std::pair<std::int64_t, std::int64_t>> {
        std::int64_t x = lo + static_cast<std::int64_t>(i);
        if (z_in(d, x)) return std::nullopt;
        for (std::int64_t y = lo; y <= static_cast<std::int64_t>(B); ++y)
          if (!z_in(d, y) && z_in(c, x * y)) return std::make_pair(x, y);
        return std::nullopt;
      });
  if (!hit) return Verdict::ok();
  return Verdict::fail("x = " + std::to_string(hit->first) + ", y = " +
                       std::to_string(hit->second) + ": xy is in cl(P) = (" + std::to_string(c) +
                       ") but neither is in (" + std::to_string(d) + ")");
}

std::uint64_t z_approx_product(const ClosureSpec& cl, std::uint64_t a, std::uint64_t b) {
  return z_cl(z_modulus(cl), to_u64(BigInt(a) * b));
}

QuotientRing z_quotient_ring(const ClosureSpec& cl, std::uint64_t d) {
  const std::uint64_t g = z_cl(z_modulus(cl), d);
  if (g == 0) throw Unsupported("cl(I) = (0): the quotient is Z itself");
  if (g > kMaterializeLimit)
    throw ResourceLimit("quotient Z/" + std::to_string(g) + " is above the table limit");
  QuotientRing q;
  q.equivalence = q.well_defined = Verdict::ok();
  std::vector<Index> add(g * g), mul(g * g);
  std::vector<std::string> labels;
  for (std::uint64_t a = 0; a < g; ++a) {
    q.reps.push_back(static_cast<Index>(a));
    q.class_of.push_back(static_cast<Index>(a));
    labels.push_back("[" + std::to_string(a) + "]");
    for (std::uint64_t b = 0; b < g; ++b) {
      add[a * g + b] = static_cast<Index>((a + b) % g);
      mul[a * g + b] = static_cast<Index>((a * b) % g);
    }
  }
  q.ring = std::make_shared<FiniteRing>(g, std::move(add), std::move(mul), 0,
                                        static_cast<Index>(1 % g), std::move(labels));
  return q;
}

FactorizationResult z_factorization_check(const ClosureSpec& cl, std::uint64_t a, std::uint64_t b,
                                          std::uint64_t c) {
  const std::uint64_t m = z_modulus(cl);
  FactorizationResult res;
  // (b) ⊆ (a) iff a | b.
  auto sub = [](std::uint64_t x, std::uint64_t y) { return y == 0 ? x == 0 : x % y == 0; };
  res.conclusion = sub(b, a) || sub(c, a);
  if (z_approx_product(cl, b, c) != a) {
    res.failed_hypothesis = "A != BC";
    return res;
  }
  if (a == 1) {
    res.failed_hypothesis = "A is not proper";
    return res;
  }
  if (!z_is_approx_prime_closed(cl, a)) {
    res.failed_hypothesis = "A is not approximately prime";
    return res;
  }
  if (z_cl(m, a) != a) {
    res.failed_hypothesis = "A is not cl-closed";
    return res;
  }
  res.hypotheses = true;
  return res;
}

FactorizationScan z_factorization_scan(const ClosureSpec& cl, std::uint64_t bound, bool parallel) {
  z_modulus(cl);
  FactorizationScan scan;
  const std::uint64_t n = bound + 1;
  scan.triples = n * n;
  std::vector<char> met(n * n, 0);
  auto hit = detail::first_hit<std::string>(
      n * n, parallel, [&](std::uint64_t idx) -> std::optional<std::string> {
        std::uint64_t b = idx / n, c = idx % n;
        std::uint64_t a = z_approx_product(cl, b, c);
        auto res = z_factorization_check(cl, a, b, c);
        met[idx] = res.hypotheses;
        if (!res.counterexample()) return std::nullopt;
        return "A = (" + std::to_string(a) + "), B = (" + std::to_string(b) + "), C = (" +
               std::to_string(c) + "): hypotheses hold but neither B nor C lies in A";
      });
  scan.hypotheses_met = static_cast<std::uint64_t>(std::count(met.begin(), met.end(), 1));
  scan.verdict = hit ? Verdict::fail(*hit) : Verdict::ok();
  return scan;
}

RingPrimeCheck z_check_thm_ring_prime(const ClosureSpec& cl, std::uint64_t bound) {
  const std::uint64_t m = z_modulus(cl);
  RingPrimeCheck out;
  out.prime_ring = static_cast<bool>(z_is_approx_prime_brute(cl, 0, std::max(bound, 2 * m)));
  const auto B = static_cast<std::int64_t>(std::max(bound, 2 * m));
  out.condition = true;
  for (std::int64_t a = -B; a <= B && out.condition; ++a) {
    if (a == 0) continue;
    for (std::int64_t b = -B; b <= B; ++b) {
      if (b == 0) continue;
      // aRb = (ab); inside (m) iff m | ab.
      if (m != 0 && z_in(m, a * b)) {
        out.condition = false;
        out.witness = "a = " + std::to_string(a) + ", b = " + std::to_string(b) + ": aRb ⊆ cl(0)";
        break;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ dispatchers

namespace {

std::uint64_t principal_gen(const Subset& s) {
  if (s.is_set() || s.principal().gens.size() != 1)
    throw Unsupported("ideal theory on Z^k is not implemented; use Z or a finite ring");
  return to_u64(s.principal().gens[0]);
}

}  // namespace

Verdict is_approx_ideal(const ClosureSpec& cl, const Subset& s) {
  if (s.ring() != cl.ring()) throw DomainMismatch("subset and closure live in different rings");
  if (cl.ring().is_finite()) return is_approx_ideal(ApproxRing::of(cl), s.set());
  principal_gen(s);
  z_modulus(cl);
  return Verdict::ok();  // R(d) = (d) ⊆ cl((d))
}

Verdict is_approx_prime(const ClosureSpec& cl, const Subset& p) {
  if (p.ring() != cl.ring()) throw DomainMismatch("subset and closure live in different rings");
  if (cl.ring().is_finite()) return is_approx_prime(ApproxRing::of(cl), p.set());
  return z_is_approx_prime_closed(cl, principal_gen(p));
}

Subset approx_product(const ClosureSpec& cl, const Subset& a, const Subset& b) {
  if (a.ring() != cl.ring() || b.ring() != cl.ring())
    throw DomainMismatch("ideals and closure live in different rings");
  if (cl.ring().is_finite())
    return Subset(cl.ring(), approx_product(ApproxRing::of(cl), a.set(), b.set()));
  return Subset::principal(z_approx_product(cl, principal_gen(a), principal_gen(b)));
}

}  // namespace approx
