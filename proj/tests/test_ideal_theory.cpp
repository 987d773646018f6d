#include <doctest.h>

#include "approx/errors.hpp"
#include "approx/hom.hpp"
#include "approx/ideal_theory.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace approx;

namespace {

ClosureSpec parse_cl(const char* ring, const char* closure) {
  return ClosureSpec::parse(Ring::parse(ring), closure);
}

// "shift0" stands for the shift by the zero ideal, written in the ring's syntax.
ClosureSpec cl_of(const char* ring, std::string closure) {
  auto r = Ring::parse(ring);
  if (closure == "shift0") closure = "shift:J=" + r.zero().to_string();
  return ClosureSpec::parse(r, closure);
}

ElemSet elems(const FiniteRing& fr, std::initializer_list<Index> xs) {
  return fr.from_members(std::vector<Index>(xs));
}

// Z/n residues are their own indices.
ElemSet multiples_of(std::uint64_t d, std::uint64_t n) {
  ElemSet s(n);
  for (std::uint64_t x = 0; x < n; ++x)
    if (x % d == 0) s.set(x);
  return s;
}

// Definition-level primality on a finite ring, straight from the tables.
bool prime_oracle(const FiniteRing& fr, const SetClosure& cl, const ElemSet& p) {
  ElemSet c = cl(p);
  for (Index x = 0; x < fr.size(); ++x)
    for (Index y = 0; y < fr.size(); ++y)
      if (c.test(fr.mul(x, y)) && !p.test(x) && !p.test(y)) return false;
  return true;
}

// (d) on Z under shift:J=m by brute force over residues of a wide window.
bool z_prime_oracle(std::uint64_t m, std::uint64_t d) {
  auto in = [](std::uint64_t g, std::int64_t v) {
    return g == 0 ? v == 0 : v % static_cast<std::int64_t>(g) == 0;
  };
  std::uint64_t c = oracle::smallest_positive_combination(d, m);
  const auto w = static_cast<std::int64_t>(3 * std::max<std::uint64_t>(m, d) + 3);
  for (std::int64_t x = -w; x <= w; ++x)
    for (std::int64_t y = -w; y <= w; ++y)
      if (in(c, x * y) && !in(d, x) && !in(d, y)) return false;
  return true;
}

}  // namespace

TEST_CASE("approximate ideals") {
  auto z12 = ApproxRing::of(parse_cl("Zn:12", "gen"));
  CHECK(is_approx_ideal(z12, multiples_of(3, 12)));
  CHECK_FALSE(is_approx_ideal(z12, elems(z12.r(), {0, 1})));
  // Diagonal of (Z/5)^3, where 5Z^3 reduces to 0. The ideal shift closes the
  // diagonal to the whole ring (it contains the unit), so absorption holds;
  // the set shift leaves it alone and (1,2,3)(1,1,1) escapes.
  auto r = Ring::parse("prod:[Zn:5,Zn:5,Zn:5]");
  auto shift = ApproxRing::of(ClosureSpec::parse(r, "shift:J=(0,0,0)"));
  auto set_shift = ApproxRing::of(ClosureSpec::parse(r, "setshift:J=(0,0,0)"));
  const auto& fr = shift.r();
  ElemSet diag(fr.size());
  for (int c = 0; c < 5; ++c) {
    auto s = std::to_string(c);
    diag.set(r.parse_element("(" + s + "," + s + "," + s + ")").index());
  }
  REQUIRE(fr.is_subgroup(diag));
  CHECK(oracle::ideal_closure(fr, diag).all());
  CHECK(is_approx_ideal(shift, diag));
  CHECK_FALSE(is_approx_ideal(set_shift, diag));
}

TEST_CASE("approximate primes on Z with a modular shift") {
  auto cl = parse_cl("Z", "shift:J=12");
  CHECK(z_is_approx_prime_closed(cl, 3));
  CHECK_FALSE(z_is_approx_prime_closed(cl, 5));
  CHECK_FALSE(z_is_approx_prime_brute(cl, 5));
  CHECK_FALSE(z_is_approx_prime_closed(cl, 4));
  auto v = z_is_approx_prime_brute(cl, 4);
  CHECK_FALSE(v);
  CHECK_THROWS_AS(z_is_approx_prime_closed(cl, 1), PreconditionError);
  CHECK(is_approx_prime(cl, Subset::principal(3)));
  CHECK_FALSE(is_approx_prime(cl, Subset::principal(4)));
}

TEST_CASE("closed form agrees with brute force for d <= 1000, m in 2..60") {
  for (std::uint64_t m = 2; m <= 60; ++m) {
    auto cl = ClosureSpec::parse(Ring::integers(), "shift:J=" + std::to_string(m));
    for (std::uint64_t d = 0; d <= 1000; ++d) {
      if (d == 1) continue;
      bool closed = z_is_approx_prime_closed(cl, d).holds;
      bool brute = z_is_approx_prime_brute(cl, d, 2 * m, false).holds;
      if (closed != brute) FAIL_CHECK("m = " << m << ", d = " << d);
    }
  }
}

TEST_CASE("Z primality agrees with an independent wide-window oracle") {
  for (std::uint64_t m = 2; m <= 16; ++m) {
    auto cl = ClosureSpec::parse(Ring::integers(), "shift:J=" + std::to_string(m));
    for (std::uint64_t d = 0; d <= 20; ++d) {
      if (d == 1) continue;
      CHECK_MESSAGE(z_is_approx_prime_closed(cl, d).holds == z_prime_oracle(m, d),
                    "m = " << m << ", d = " << d);
    }
  }
}

TEST_CASE("primality on finite rings matches the definition") {
  for (const char* ring : {"Zn:12", "Zn:8", "prod:[Zn:2,Zn:4]", "GF:2/x^3"}) {
    for (const char* clt : {"gen", "shift0"}) {
      auto spec = cl_of(ring, clt);
      auto ar = ApproxRing::of(spec);
      for (const auto& p : approx_ideals(ar)) {
        if (p.all()) continue;
        if (ar.cl(p).all()) {
          CHECK_FALSE(is_approx_prime(ar, p));
          continue;
        }
        CHECK_MESSAGE(is_approx_prime(ar, p).holds == prime_oracle(ar.r(), ar.cl, p),
                      ring << " " << clt << " " << ar.r().format_set(p));
        CHECK(is_approx_prime(ar, p, true).holds == is_approx_prime(ar, p, false).holds);
      }
    }
  }
  auto ar = ApproxRing::of(parse_cl("Zn:12", "gen"));
  CHECK_THROWS_AS(is_approx_prime(ar, ar.r().full_set()), PreconditionError);
  CHECK_THROWS_AS(is_approx_prime(ar, elems(ar.r(), {0, 1})), PreconditionError);
}

TEST_CASE("approximate products") {
  auto cl = parse_cl("Z", "shift:J=12");
  CHECK(z_approx_product(cl, 2, 3) == 6);
  CHECK(z_approx_product(cl, 0, 5) == 12);
  auto ar = ApproxRing::of(parse_cl("Zn:12", "gen"));
  CHECK(approx_product(ar, multiples_of(2, 12), multiples_of(2, 12)) == multiples_of(4, 12));
  auto zero = ar.r().singleton(0);
  CHECK(approx_product(ar, zero, multiples_of(3, 12)) == ar.cl(zero));
}

TEST_CASE("quotient rings") {
  auto q = z_quotient_ring(parse_cl("Z", "shift:J=6"), 4);
  CHECK(q.size() == 2);
  auto gen = ApproxRing::of(parse_cl("Zn:12", "gen"));
  auto q3 = quotient_ring(gen, multiples_of(3, 12));
  CHECK(q3.size() == 3);
  CHECK(q3.well_defined);
  auto sh = ApproxRing::of(parse_cl("Zn:12", "shift:J=6"));
  auto q6 = quotient_ring(sh, sh.r().singleton(0));
  CHECK(q6.size() == 6);
  CHECK(q6.equivalence);
  CHECK_FALSE(q6.ring_axioms_violation);
  for (Index x = 0; x < 12; ++x) CHECK(q6.class_of[x] == q6.class_of[(x + 6) % 12]);
}

TEST_CASE("quotients are well defined for every approximate ideal") {
  for (const char* ring : {"Zn:12", "Zn:8", "prod:[Zn:2,Zn:4]", "GF:2/x^2+x+1"}) {
    for (const char* clt : {"gen", "shift0"}) {
      auto ar = ApproxRing::of(cl_of(ring, clt));
      for (const auto& i : approx_ideals(ar)) {
        auto q = quotient_ring(ar, i);
        CHECK(q.equivalence);
        CHECK(q.well_defined);
        CHECK_FALSE(q.ring_axioms_violation);
        CHECK(q.size() * ar.cl(i).count() == ar.r().size());
      }
    }
  }
}

TEST_CASE("factorization theorem") {
  auto cl = parse_cl("Z", "shift:J=30");
  auto bad = z_factorization_check(cl, 1, 3, 1);
  CHECK_FALSE(bad.hypotheses);
  auto ok = z_factorization_check(cl, 3, 3, 7);
  CHECK(ok.hypotheses);
  CHECK(ok.conclusion);
  auto scan = factorization_scan(ApproxRing::of(parse_cl("Zn:12", "shift:J=6")));
  CHECK(scan.verdict);
  CHECK(scan.triples > 0);
  auto zscan = z_factorization_scan(cl, 200);
  CHECK(zscan.verdict);
  CHECK(zscan.hypotheses_met > 0);
  for (const char* ring : {"Zn:8", "Zn:30", "prod:[Zn:2,Zn:4]", "GF:2/x^3"})
    for (const char* clt : {"gen", "shift0"})
      CHECK_MESSAGE(factorization_scan(ApproxRing::of(cl_of(ring, clt))).verdict,
                    ring << " " << clt);
}

TEST_CASE("prime-ring characterization") {
  auto z6 = check_thm_ring_prime(ApproxRing::of(parse_cl("Zn:6", "gen")));
  CHECK_FALSE(z6.prime_ring);
  CHECK_FALSE(z6.condition);
  auto z5 = check_thm_ring_prime(ApproxRing::of(parse_cl("Zn:5", "gen")));
  CHECK(z5.prime_ring);
  CHECK(z5.agree());
  auto z = z_check_thm_ring_prime(parse_cl("Z", "shift:J=0"));
  CHECK(z.prime_ring);
  CHECK(z.agree());
  CHECK(z_check_thm_ring_prime(parse_cl("Z", "shift:J=6")).agree());
  for (const char* ring : {"Zn:8", "Zn:12", "prod:[Zn:2,Zn:4]", "GF:2/x^2+x+1", "GF:3/x^2+1"})
    for (const char* clt : {"gen", "shift0"}) {
      auto ar = ApproxRing::of(cl_of(ring, clt));
      CHECK_MESSAGE(check_thm_ring_prime(ar).agree(), ring << " " << clt);
    }
  for (const char* clt : {"shift:J=2", "shift:J=3", "shift:J=4", "setshift:J=6"})
    CHECK_MESSAGE(check_thm_ring_prime(ApproxRing::of(parse_cl("Zn:12", clt))).agree(), clt);
}

TEST_CASE("homomorphisms are verified") {
  auto z12 = Ring::residue(12);
  auto z4 = Ring::residue(4);
  auto f = RingHom::canonical(z12, z4);
  CHECK(f.surjective());
  CHECK(f.kernel() == multiples_of(4, 12));
  CHECK_THROWS_AS(RingHom::canonical(z4, z12), PreconditionError);
  std::vector<Index> zero_map(12, 0);
  CHECK_THROWS_AS(RingHom(z12.finite_ptr(), z4.finite_ptr(), zero_map), PreconditionError);
}

TEST_CASE("transfer along Z -> Z/12") {
  ZReduction f{parse_cl("Z", "shift:J=12"), parse_cl("Zn:12", "gen")};
  CHECK(z_is_image_morphic(f));
  CHECK(z_is_preimage_continuous(f, AxiomMode::exhaustive()));

  auto t3 = z_preimage_transfer(f, multiples_of(3, 12), AxiomMode::exhaustive());
  CHECK(t3.k == 3);
  CHECK(t3.prime_clause);
  REQUIRE(t3.approx_prime);
  CHECK(*t3.approx_prime);

  auto t0 = z_preimage_transfer(f, multiples_of(12, 12), AxiomMode::exhaustive());
  CHECK(t0.k == 12);
  CHECK_FALSE(t0.prime_clause);
  REQUIRE(t0.approx_prime);
  CHECK_FALSE(*t0.approx_prime);

  auto i3 = z_image_transfer(f, 3, AxiomMode::exhaustive());
  CHECK(i3.ideal == multiples_of(3, 12));
  CHECK(i3.prime_clause);
  CHECK(i3.conclusion_holds());
  CHECK(i3.pullback);

  auto i5 = z_image_transfer(f, 5, AxiomMode::exhaustive());
  CHECK_FALSE(i5.prime_clause);
  CHECK(i5.approx_ideal);
  CHECK(i5.ideal.all());
}

TEST_CASE("transfer along finite homomorphisms") {
  auto z12 = Ring::residue(12);
  auto ar = ApproxRing::of(ClosureSpec::parse(z12, "gen"));
  auto id = RingHom::identity(z12);
  for (const auto& j : approx_ideals(ar)) {
    auto t = preimage_transfer(id, ar, ar, j);
    CHECK(t.ideal == j);
    CHECK(t.conclusion_holds());
    auto u = image_transfer(id, ar, ar, j);
    CHECK(u.ideal == j);
    CHECK(u.conclusion_holds());
    CHECK(u.pullback);
  }
  auto z4 = Ring::residue(4);
  auto f = RingHom::canonical(z12, z4);
  auto r = ApproxRing::of(ClosureSpec::parse(z12, "shift:J=4"));
  auto s = ApproxRing::of(ClosureSpec::parse(z4, "gen"));
  for (const auto& j : approx_ideals(s)) {
    auto t = preimage_transfer(f, r, s, j);
    CHECK(t.conclusion_holds());
  }
  for (const auto& i : approx_ideals(r)) {
    auto u = image_transfer(f, r, s, i);
    CHECK(u.conclusion_holds());
    if (u.preimage_continuous) CHECK(u.pullback);
  }
  auto z3 = ApproxRing::of(ClosureSpec::parse(Ring::residue(3), "gen"));
  auto g = RingHom::canonical(Ring::residue(3), Ring::residue(3));
  CHECK_NOTHROW(image_transfer(g, z3, z3, z3.r().singleton(0)));
}

TEST_CASE("preimage transfer refuses unverified functoriality") {
  // Z/4 with gen -> Z/2 with a shift that swallows everything: f^-1(cl(B))
  // = Z/4 but cl(f^-1({0})) = (2).
  auto z4 = Ring::residue(4);
  auto z2 = Ring::residue(2);
  auto f = RingHom::canonical(z4, z2);
  auto r = ApproxRing::of(ClosureSpec::parse(z4, "gen"));
  auto s = ApproxRing::of(ClosureSpec::parse(z2, "shift:J=1"));
  CHECK_FALSE(is_preimage_continuous(f, r.cl, s.cl, AxiomMode::exhaustive()));
  CHECK_THROWS_AS(preimage_transfer(f, r, s, s.r().singleton(0)), PreconditionError);
  auto inj = RingHom::canonical(Ring::residue(2), Ring::parse("prod:[Zn:2,Zn:2]"));
  auto a2 = ApproxRing::of(ClosureSpec::parse(Ring::residue(2), "gen"));
  auto p22 = ApproxRing::of(ClosureSpec::parse(Ring::parse("prod:[Zn:2,Zn:2]"), "gen"));
  CHECK_THROWS_AS(image_transfer(inj, a2, p22, a2.r().singleton(0)), PreconditionError);
}

TEST_CASE("preimage and image checks agree serially and in parallel") {
  auto z12 = Ring::residue(12);
  auto z6 = Ring::residue(6);
  auto f = RingHom::canonical(z12, z6);
  auto r = ApproxRing::of(ClosureSpec::parse(z12, "shift:J=3"));
  auto s = ApproxRing::of(ClosureSpec::parse(z6, "setshift:J=2"));
  for (auto mode : {AxiomMode::exhaustive(), AxiomMode::subgroups(), AxiomMode::sampled(7, 300)}) {
    auto a = is_image_morphic(f, r.cl, s.cl, mode, true);
    auto b = is_image_morphic(f, r.cl, s.cl, mode, false);
    CHECK(a.holds == b.holds);
    CHECK(a.witness == b.witness);
    auto c = is_preimage_continuous(f, r.cl, s.cl, mode, true);
    auto d = is_preimage_continuous(f, r.cl, s.cl, mode, false);
    CHECK(c.holds == d.holds);
    CHECK(c.witness == d.witness);
  }
}

TEST_CASE("Z reduction agrees with an explicit finite model") {
  // Z -> Z/n factors through Z/N for N = lcm(n, m); the finite model must
  // give the same preimage-continuity verdict.
  for (std::uint64_t n : {4, 6, 12})
    for (std::uint64_t m : {2, 3, 4, 6, 12}) {
      std::uint64_t big = std::lcm(n, m);
      auto zn = Ring::residue(n);
      auto zN = Ring::residue(big);
      auto mm = std::to_string(m % big);
      for (const char* kind : {"shift:J=", "setshift:J="}) {
        ZReduction zr{ClosureSpec::parse(Ring::integers(), kind + std::to_string(m)),
                      ClosureSpec::parse(zn, "gen")};
        auto f = RingHom::canonical(zN, zn);
        auto r = ApproxRing::of(ClosureSpec::parse(zN, kind + mm));
        auto s = ApproxRing::of(ClosureSpec::parse(zn, "gen"));
        auto mode = AxiomMode::exhaustive();
        CHECK_MESSAGE(z_is_preimage_continuous(zr, mode).holds ==
                          is_preimage_continuous(f, r.cl, s.cl, mode).holds,
                      "n = " << n << ", " << kind << m);
      }
    }
}
