#include <doctest.h>

#include "approx/errors.hpp"
#include "approx/spectrum.hpp"
#include "oracles.hpp"

using namespace approx;

namespace {

Spectrum spec_of(const char* ring, std::string closure, SpectrumOptions opt = {}) {
  auto r = Ring::parse(ring);
  if (closure == "shift0") closure = "shift:J=" + r.zero().to_string();
  return spectrum(ClosureSpec::parse(r, closure), opt);
}

std::vector<std::uint64_t> gens(const Spectrum& sp, const std::vector<std::size_t>& idx) {
  std::vector<std::uint64_t> out;
  for (auto i : idx) out.push_back(std::get<std::uint64_t>(sp.primes[i]));
  return out;
}

std::vector<std::uint64_t> all_gens(const Spectrum& sp) {
  std::vector<std::size_t> idx(sp.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return gens(sp, idx);
}

// Primes by the definition over every subgroup found by brute force.
std::vector<ElemSet> prime_oracle(const FiniteRing& fr, const SetClosure& cl) {
  std::vector<ElemSet> out;
  for (const auto& p : oracle::all_subgroups(fr)) {
    if (p.all()) continue;
    ElemSet c = cl(p);
    bool ideal = true;
    for (Index r = 0; r < fr.size() && ideal; ++r)
      for (Index s = 0; s < fr.size() && ideal; ++s)
        if (p.test(s) && !c.test(fr.mul(r, s))) ideal = false;
    if (!ideal) continue;
    bool prime = true;
    for (Index x = 0; x < fr.size() && prime; ++x)
      for (Index y = 0; y < fr.size() && prime; ++y)
        if (c.test(fr.mul(x, y)) && !p.test(x) && !p.test(y)) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("spectrum of Z under the modular closure") {
  auto s12 = spec_of("Z", "shift:J=12");
  CHECK(s12.method == Spectrum::Method::ClosedForm);
  CHECK(all_gens(s12) == std::vector<std::uint64_t>{2, 3});
  REQUIRE(s12.cross_check);
  CHECK(*s12.cross_check);
  auto s30 = spec_of("Z", "shift:J=30");
  CHECK(all_gens(s30) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(gens(s30, v_set(s30, std::uint64_t{12})) == std::vector<std::uint64_t>{2, 3});
  CHECK(gens(s30, d_set(s30, std::uint64_t{12})) == std::vector<std::uint64_t>{5});
  CHECK(v_set(s30, std::uint64_t{0}).size() == 3);
  CHECK(v_set(s30, std::uint64_t{1}).empty());
  CHECK(gens(s30, closure_of_point(s30, std::uint64_t{3})) == std::vector<std::uint64_t>{3});
  CHECK_THROWS_AS(closure_of_point(s30, std::uint64_t{7}), PreconditionError);
  auto t = topology_check(s30);
  CHECK(t.discrete);
  CHECK(t.t1_closed_points);
  CHECK(t.t1_agree());
  CHECK(t.t0);
  CHECK(t.union_law);
  CHECK(t.intersection_law);
  CHECK(t.quasi_compact);
}

TEST_CASE("V and D on Z match the closed form for every n") {
  for (std::uint64_t m : {12, 30, 60, 97}) {
    auto sp = spectrum(ClosureSpec::parse(Ring::integers(), "shift:J=" + std::to_string(m)));
    for (std::uint64_t n = 0; n <= 200; ++n) {
      std::vector<std::uint64_t> expect_v, expect_d;
      for (std::uint64_t p = 2; p <= m; ++p) {
        if (!oracle::is_prime_trial(p) || m % p) continue;
        (n % p == 0 ? expect_v : expect_d).push_back(p);
      }
      CHECK(gens(sp, v_set(sp, n)) == expect_v);
      CHECK(gens(sp, d_set(sp, n)) == expect_d);
    }
  }
}

TEST_CASE("closed-form spectrum equals brute force for m in 2..120") {
  for (std::uint64_t m = 2; m <= 120; ++m) {
    auto sp = spectrum(ClosureSpec::parse(Ring::integers(), "shift:J=" + std::to_string(m)));
    REQUIRE(sp.cross_check);
    CHECK_MESSAGE(sp.cross_check->holds, "m = " << m << ": " << sp.cross_check->witness);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t p = 2; p <= m; ++p)
      if (oracle::is_prime_trial(p) && m % p == 0) expect.push_back(p);
    CHECK(all_gens(sp) == expect);
  }
}

TEST_CASE("classical Z within a bound is not T1") {
  SpectrumOptions opt;
  opt.bound = 100;
  auto sp = spec_of("Z", "gen", opt);
  CHECK(sp.bounded());
  CHECK(sp.primes.front() == IdealValue{std::uint64_t{0}});
  CHECK(sp.size() == 26);  // (0) and the 25 primes below 100
  auto t = topology_check(sp);
  CHECK_FALSE(t.t1_closed_points);
  CHECK_FALSE(t.t1_maximal);
  CHECK(t.t0);
  CHECK(closure_of_point(sp, std::uint64_t{0}).size() == sp.size());
  CHECK(sp.cross_check->holds);
}

TEST_CASE("spectrum of Z/12 with generated ideals") {
  auto sp = spec_of("Zn:12", "gen");
  REQUIRE(sp.size() == 2);
  CHECK(sp.labels[0] == "{0, 3, 6, 9}");
  CHECK(sp.labels[1] == "{0, 2, 4, 6, 8, 10}");
  auto t = topology_check(sp);
  CHECK(t.ideals == 6);
  CHECK(t.union_law);
  CHECK(t.intersection_law);
  CHECK(t.whole_and_empty);
  CHECK(t.discrete);
}

TEST_CASE("finite spectra agree with the definition-level oracle") {
  for (const char* ring : {"Zn:12", "Zn:8", "Zn:10", "prod:[Zn:2,Zn:4]", "GF:2/x^3", "GF:3/x^2+1"})
    for (const char* clt : {"gen", "shift0"}) {
      auto r = Ring::parse(ring);
      std::string c = clt;
      if (c == "shift0") c = "shift:J=" + r.zero().to_string();
      auto ar = ApproxRing::of(ClosureSpec::parse(r, c));
      auto sp = spectrum(ar);
      auto expect = prime_oracle(ar.r(), ar.cl);
      CHECK_MESSAGE(sp.size() == expect.size(), ring << " " << clt);
      for (const auto& p : expect) CHECK(sp.find(p));
      SpectrumOptions serial;
      serial.parallel = false;
      CHECK(spectrum(ar, serial).primes == sp.primes);
    }
}

TEST_CASE("topology laws on finite test rings") {
  const char* rings[] = {"Zn:12", "Zn:8", "Zn:30", "prod:[Zn:2,Zn:4]", "GF:2/x^3"};
  for (const char* ring : rings)
    for (const char* clt : {"gen", "shift0", "shift:J=2"}) {
      auto r = Ring::parse(ring);
      std::string c = clt;
      if (c == "shift0") c = "shift:J=" + r.zero().to_string();
      if (c == "shift:J=2" && r.kind() != RingKind::Residue) continue;
      auto sp = spectrum(ClosureSpec::parse(r, c));
      auto t = topology_check(sp);
      INFO(ring << " " << clt);
      CHECK(t.whole_and_empty);
      CHECK(t.intersection_law);
      CHECK(t.union_law);
      CHECK(t.t0);
      CHECK(t.t1_agree());
      CHECK(t.quasi_compact);
    }
}

TEST_CASE("Z/12 under shift by (6): primes and the closed-ideal remark") {
  auto sp = spec_of("Zn:12", "shift:J=6");
  // cl(P) = P + (6): (2) and (3) as in Z/6.
  CHECK(sp.size() == 2);
  auto t = topology_check(sp);
  CHECK(t.primes_closed);
  CHECK(t.closed_ideals_under_primes);
}
