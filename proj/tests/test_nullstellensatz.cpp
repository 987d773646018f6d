#include <doctest.h>

#include "approx/errors.hpp"
#include "approx/nullstellensatz.hpp"
#include "oracles.hpp"

using namespace approx;

namespace {

// Brute force over evaluation tables: element i vanishes at point j iff
// its j-th digit is zero.
struct FunOracle {
  Ring fun;
  std::uint32_t p;
  std::vector<std::vector<std::uint32_t>> tables;

  explicit FunOracle(const Ring& r) : fun(r), p(r.prime()) {
    for (std::uint64_t i = 0; i < r.finite().size(); ++i)
      tables.push_back(element_at(r, i).digits());
  }
  std::size_t size() const { return tables.size(); }
  std::size_t points() const { return tables[0].size(); }

  PointSet v(const ElemSet& s) const {
    PointSet out(points());
    out.set();
    for (Index i : members(s))
      for (std::size_t j = 0; j < points(); ++j)
        if (tables[i][j] != 0) out.reset(j);
    return out;
  }
  ElemSet i(const PointSet& w) const {
    ElemSet out(size());
    for (std::size_t k = 0; k < size(); ++k) {
      bool zero = true;
      for (auto j = w.find_first(); j != PointSet::npos; j = w.find_next(j))
        zero = zero && tables[k][j] == 0;
      if (zero) out.set(k);
    }
    return out;
  }
  // Under pointwise evaluation g^n ∈ I(V(I)) iff g^n vanishes on V(I).
  ElemSet pointwise_radical(const ElemSet& ideal) const {
    PointSet w = v(ideal);
    ElemSet out(size());
    for (std::size_t k = 0; k < size(); ++k) {
      bool found = false;
      std::vector<std::uint32_t> pw = tables[k];
      for (std::size_t n = 1; n <= size() && !found; ++n) {
        bool zero = true;
        for (auto j = w.find_first(); j != PointSet::npos; j = w.find_next(j))
          zero = zero && pw[j] == 0;
        found = zero;
        for (std::size_t j = 0; j < pw.size(); ++j) pw[j] = pw[j] * tables[k][j] % p;
      }
      if (found) out.set(k);
    }
    return out;
  }
};

Ring fun(std::uint32_t p, std::uint32_t n) {
  return Ring::parse("Fun:p=" + std::to_string(p) + ",n=" + std::to_string(n));
}

FunctionClosure fc(const Ring& r, const char* closure) {
  return FunctionClosure::of(ClosureSpec::parse(r, closure));
}

PointSet points_of(const Ring& r, std::initializer_list<std::vector<std::uint32_t>> pts) {
  PointSet w(r.num_points());
  for (const auto& pt : pts) w.set(point_index(r, pt));
  return w;
}

ElemSet gens(const Ring& r, std::initializer_list<const char*> texts) {
  ElemSet s(r.finite().size());
  for (const char* t : texts) s.set(r.parse_element(t).index());
  return s;
}

}  // namespace

TEST_CASE("varieties and vanishing ideals") {
  auto r = fun(2, 2);
  auto var = variety(r, gens(r, {"x1*x2"}));
  CHECK(var.agree());
  CHECK(var.points == points_of(r, {{0, 0}, {0, 1}, {1, 0}}));
  CHECK(format_points(r, var.points) == "{(0,0), (0,1), (1,0)}");

  PointSet none(r.num_points()), all(r.num_points());
  all.set();
  CHECK(vanishing_ideal(r, none).count() == r.finite().size());
  CHECK(vanishing_ideal(r, all) == r.finite().singleton(0));

  auto m = point_ideal(r, {1, 0});
  CHECK(variety(r, m).points == points_of(r, {{1, 0}}));
  CHECK(m == vanishing_ideal(r, points_of(r, {{1, 0}})));

  FunOracle o(r);
  for (const auto& i : enumerate_ideals(r.finite(), 64)) {
    CHECK(variety(r, i).points == o.v(i));
    CHECK(vanishing_ideal(r, o.v(i)) == o.i(o.v(i)));
  }
  CHECK_THROWS_AS(variety(Ring::parse("Zn:6"), ElemSet(6)), DomainMismatch);
}

TEST_CASE("point ideals over F_3") {
  auto r = fun(3, 1);
  for (std::uint32_t a = 0; a < 3; ++a) {
    auto m = point_ideal(r, {a});
    CHECK(m.count() == 9);
    CHECK(variety(r, m).points == points_of(r, {{a}}));
  }
}

TEST_CASE("polynomial round trip for every function") {
  for (auto r : {fun(2, 2), fun(3, 1), fun(2, 3)}) {
    const auto& fr = r.finite();
    for (Index i = 0; i < fr.size(); ++i) {
      auto f = element_at(r, i);
      CHECK(r.parse_element(f.to_string()) == f);
    }
  }
}

TEST_CASE("pointwise evaluation: ESEP, PP and the equality") {
  for (auto r : {fun(2, 1), fun(2, 2), fun(3, 1)}) {
    auto c = fc(r, "pointwise");
    auto ideals = enumerate_ideals(r.finite(), 64);
    auto esep = check_esep(c, ideals);
    CHECK(esep.verdict);
    auto pp = check_pp(c);
    CHECK(pp.holds());
    CHECK(pp.points == r.num_points());
    auto ans = check_ans(c, ideals);
    CHECK(ans.equality);
    CHECK(ans.ideals == ideals.size());
    FunOracle o(r);
    for (const auto& i : ideals) {
      auto s = ans_sides(c, i);
      CHECK(s.rad == o.pointwise_radical(i));
      CHECK(s.ivi == o.i(o.v(i)));
    }
  }
  CHECK(enumerate_ideals(fun(2, 1).finite(), 64).size() == 4);
  CHECK(enumerate_ideals(fun(2, 2).finite(), 64).size() == 16);
}

TEST_CASE("sampling with a full cover gives ESEP and PP") {
  auto r = fun(2, 2);
  auto c = fc(r, "sample:[{(0,0),(0,1)},{(1,0),(1,1)}]");
  auto ideals = enumerate_ideals(r.finite(), 64);
  CHECK(check_esep(c, ideals).verdict);
  CHECK(check_pp(c).holds());
  CHECK(check_ans(c, ideals).equality);
}

TEST_CASE("set shift by the whole ring fails PP and blocks the equality") {
  auto r = fun(2, 2);
  auto c = fc(r, "setshift:J=1");
  auto pp = check_pp(c);
  CHECK_FALSE(pp.closed);
  CHECK(pp.closed.witness.find("not closed") != std::string::npos);
  auto ideals = enumerate_ideals(r.finite(), 64);
  try {
    check_ans(c, ideals);
    FAIL("expected hypothesis-not-established");
  } catch (const PreconditionError& e) {
    CHECK(e.cause() == "hypothesis-not-established");
  }
}

TEST_CASE("generated ideals agree with pointwise evaluation") {
  auto r = fun(2, 2);
  auto c = fc(r, "gen");
  auto ideals = enumerate_ideals(r.finite(), 64);
  // Function rings are products of fields: every ideal is I(V(I)).
  CHECK(check_esep(c, ideals).verdict);
  CHECK(check_ans(c, ideals).equality);
}

TEST_CASE("Galois connection laws") {
  auto r = fun(2, 2);
  auto ideals = enumerate_ideals(r.finite(), 64);
  std::vector<PointSet> sets;
  for (std::uint64_t mask = 0; mask < 16; ++mask) sets.emplace_back(4, mask);
  CHECK(check_galois(r, ideals, sets));
}

TEST_CASE("search for ESEP without the equality") {
  auto r = fun(2, 1);
  auto found = search_esep_without_pp(r, false);
  // Every closure where ESEP holds and the equality breaks also breaks PP.
  REQUIRE(found.size() == 6);
  for (const auto& f : found) {
    CHECK_FALSE(f.pp);
    CHECK(f.ideal == "{0}");
    CHECK(f.ivi == "{0}");
    CHECK(f.rad != f.ivi);
  }
  CHECK(found[0].closure == "shift:J=x");
  CHECK(found[0].rad == "{0, x}");
}

TEST_CASE("tolerance balanced rule on the standard grid") {
  auto grid = tolerance_grid();
  CHECK(grid.size() == 100);
  auto res = check_tolerance_balanced(grid);
  CHECK(res.verdict);
  CHECK(res.cases == 100);
  CHECK(res.members > 0);
  CHECK(res.unit_bounded > 0);
  CHECK(res.unit_bounded < 100);
}

TEST_CASE("nullstellensatz checks agree serially and in parallel") {
  auto r = fun(2, 2);
  auto ideals = enumerate_ideals(r.finite(), 64);
  for (const char* cl : {"pointwise", "gen", "setshift:J=1", "shift:J=x1"}) {
    auto c = fc(r, cl);
    auto a = check_esep(c, ideals, false), b = check_esep(c, ideals, true);
    CHECK(a.verdict.holds == b.verdict.holds);
    CHECK(a.verdict.witness == b.verdict.witness);
    CHECK(a.functions == b.functions);
    auto pa = check_pp(c, false), pb = check_pp(c, true);
    CHECK(pa.closed.witness == pb.closed.witness);
    CHECK(pa.prime.witness == pb.prime.witness);
  }
}

TEST_CASE("function closures refuse what they cannot evaluate") {
  CHECK_THROWS_AS(fc(Ring::parse("Zn:6"), "gen"), DomainMismatch);
  Tolerance tol{{{{0}, Rational(1)}}};
  CHECK_THROWS_AS(FunctionClosure::of(ClosureSpec(fun(2, 1), tol)), Unsupported);
}
