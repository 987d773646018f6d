#include <doctest.h>

#include "approx/errors.hpp"
#include "approx/modules.hpp"

#include <random>
#include <set>

using namespace approx;

namespace {

// Reference group Z/n1 x ... x Z/nk on coordinate vectors, with its own
// index order (first coordinate most significant) and closures.
struct RefGroup {
  std::vector<std::uint64_t> orders;
  std::size_t size() const {
    std::size_t s = 1;
    for (auto n : orders) s *= n;
    return s;
  }
  std::vector<std::uint64_t> coords(std::size_t i) const {
    std::vector<std::uint64_t> c(orders.size());
    for (std::size_t k = orders.size(); k-- > 0;) {
      c[k] = i % orders[k];
      i /= orders[k];
    }
    return c;
  }
  std::size_t index(const std::vector<std::uint64_t>& c) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < orders.size(); ++k) i = i * orders[k] + c[k] % orders[k];
    return i;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    auto x = coords(a), y = coords(b);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
    return index(x);
  }
  std::size_t sub(std::size_t a, std::size_t b) const {
    auto x = coords(a), y = coords(b);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += orders[k] - y[k];
    return index(x);
  }
  // Fixpoint of {0} ∪ X under x + y (finite, so negatives come for free).
  std::set<std::size_t> gen(const std::set<std::size_t>& xs) const {
    std::set<std::size_t> s{0};
    s.insert(xs.begin(), xs.end());
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::size_t> cur(s.begin(), s.end());
      for (auto x : cur)
        for (auto y : cur) changed |= s.insert(add(x, y)).second;
    }
    return s;
  }
  std::set<std::size_t> plus(const std::set<std::size_t>& a, const std::set<std::size_t>& b) const {
    std::set<std::size_t> out;
    for (auto x : a)
      for (auto y : b) out.insert(add(x, y));
    return out;
  }
  // Classes of {x in dom} under x ~ y iff x - y in rel, found by union-find.
  std::size_t count_classes(const std::set<std::size_t>& dom, const std::set<std::size_t>& rel) const {
    std::vector<std::size_t> parent(size());
    for (std::size_t i = 0; i < size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t x = 0; x < size(); ++x)
      for (auto c : rel) parent[find(x)] = find(add(x, c));
    std::set<std::size_t> roots;
    for (auto x : dom) roots.insert(find(x));
    return roots.size();
  }
};

enum class Kind { Gen, Shift, SetShift };
struct RefClosure {
  const RefGroup* g;
  Kind kind;
  std::set<std::size_t> n0;
  std::set<std::size_t> operator()(const std::set<std::size_t>& x) const {
    switch (kind) {
      case Kind::Gen:
        return g->gen(x);
      case Kind::Shift:
        return g->plus(g->gen(x), n0);
      case Kind::SetShift:
        return g->plus(x, n0);
    }
    return {};
  }
};

std::set<std::size_t> to_set(const ElemSet& s) {
  std::set<std::size_t> out;
  for (auto x = s.find_first(); x != ElemSet::npos; x = s.find_next(x)) out.insert(x);
  return out;
}

ApproxModule am_of(const char* module, const char* closure) {
  auto m = Module::parse(module);
  return ApproxModule::of(m, ModuleClosureSpec::parse(m, closure));
}

RefClosure ref_of(const RefGroup& g, const ApproxModule& am, const char* closure) {
  std::string c = closure;
  if (c == "gen") return {&g, Kind::Gen, {}};
  auto n0 = to_set(am.m().parse_subset(c.substr(c.find('=') + 1)));
  return {&g, c.rfind("setshift", 0) == 0 ? Kind::SetShift : Kind::Shift, n0};
}

ApproxHom hom_of(const ApproxModule& a, const ApproxModule& b, const char* text) {
  return ApproxHom(a, b, ApproxHom::parse_table(a, b, text));
}

}  // namespace

TEST_CASE("module construction and parsing") {
  auto m = Module::parse("Z/2xZ/4");
  CHECK(m.size() == 8);
  CHECK(m.exponent() == 4);
  CHECK(m.label(m.parse_element("(1,3)")) == "(1,3)");
  CHECK(m.format(m.parse_subset("(0,2)")) == "{(0,0), (0,2)}");
  CHECK(m.parse_subset("{}").none());
  CHECK(m.parse_subset("M").all());
  auto z12 = Module::parse("Z/12", Ring::residue(24));
  CHECK(z12.exponent() == 24);
  CHECK_THROWS_AS(Module::parse("Z/12", Ring::residue(8)), PreconditionError);
  CHECK_THROWS_AS(Module::parse("Z/12", Ring::parse("GF:2/x^3")), Unsupported);
  CHECK_THROWS_AS(Module::parse("Z12"), ParseError);
  CHECK_THROWS_AS(ModuleClosureSpec::parse(m, "shift:N={(0,1)}"), PreconditionError);
}

TEST_CASE("CM axioms") {
  SUBCASE("Z/12 shifted by (6) passes exhaustively") {
    auto rep = check_cm_axioms(am_of("Z/12", "shift:N=6"), AxiomMode::exhaustive());
    CHECK(rep.all_pass());
    CHECK(rep.get(Axiom::C4a).domain == 4096u * 4097u / 2);  // unordered pairs
  }
  SUBCASE("generated submodules pass on every test module") {
    for (const char* m : {"Z/8", "Z/12", "Z/2xZ/4", "Z/2xZ/2xZ/2"})
      CHECK_MESSAGE(check_cm_axioms(am_of(m, "gen"), AxiomMode::exhaustive()).all_pass(), m);
    CHECK(check_cm_axioms(am_of("Z/24", "gen"), AxiomMode::subgroups()).all_pass());
  }
  SUBCASE("X ∪ {1} breaks compatibility") {
    auto m = Module::parse("Z/6");
    auto broken = ApproxModule::custom(
        m,
        [&](const ElemSet& x) {
          ElemSet y = x;
          y.set(1);
          return y;
        },
        "X ∪ {1}");
    auto rep = check_cm_axioms(broken, AxiomMode::exhaustive());
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.get(Axiom::C1).pass);
    CHECK(rep.get(Axiom::C3).pass);
    CHECK_FALSE(rep.get(Axiom::C4a).pass);
    REQUIRE(rep.get(Axiom::C4a).counterexample);
    CHECK(replay(m.carrier(), broken.cl, *rep.get(Axiom::C4a).counterexample));
    CHECK(axiom_name(Axiom::C4a, true) == "CM4a");
  }
  SUBCASE("set shifts") {
    CHECK(check_cm_axioms(am_of("Z/2xZ/4", "setshift:N=(0,2)"), AxiomMode::exhaustive()).all_pass());
  }
}

TEST_CASE("approximate submodules") {
  CHECK(is_approx_submodule(am_of("Z/8", "gen"), Module::parse("Z/8").parse_subset("{0,4}")));
  auto v = am_of("Z/2xZ/2", "gen");
  CHECK(is_approx_submodule(v, v.m().parse_subset("{(0,0),(1,0)}")));
  auto s = am_of("Z/2xZ/2", "setshift:N={(0,0)}");
  CHECK(is_approx_submodule(s, s.m().parse_subset("{(0,0),(1,1)}")));
  CHECK_THROWS_AS(is_approx_submodule(v, v.m().parse_subset("{(0,0),(1,1),(1,0)}")),
                  PreconditionError);
  // Over Z/4 acting on Z/4, every subgroup is a submodule.
  auto z4 = am_of("Z/4", "gen");
  for (const auto& h : enumerate_subgroups(z4.m().carrier(), 64))
    CHECK(is_approx_submodule(z4, h));
}

TEST_CASE("module quotients") {
  auto a = am_of("Z/12", "shift:N=6");
  auto q = module_quotient(a, a.m().parse_subset("4"));
  CHECK(q.size() == 2);  // (4) + (6) = (2)
  CHECK(q.equivalence);
  CHECK(q.well_defined);
  REQUIRE(q.module);
  CHECK(q.module->m().size() == 2);
  CHECK(module_quotient(a, a.m().full_set()).size() == 1);
  auto g = am_of("Z/12", "gen");
  auto same = module_quotient(g, g.m().singleton(0));
  CHECK(same.size() == 12);
  CHECK(check_cm_axioms(*same.module, AxiomMode::exhaustive()).all_pass());
  // A relation set that is not a subgroup is reported, not repaired.
  auto bad = relation_quotient(g, g.m().parse_subset("{0,3}"));
  CHECK_FALSE(bad.equivalence);
}

TEST_CASE("kernels and images") {
  auto g = am_of("Z/12", "gen");
  auto f = hom_of(g, g, "mul:3");
  CHECK(f.additive());
  auto k = kernel(f);
  CHECK(g.m().format(k.ker) == "{0, 4, 8}");
  CHECK(k.subgroup);
  REQUIRE(k.approx_submodule);
  CHECK(*k.approx_submodule);
  auto img = image_q(f);
  CHECK(img.classes.count() == 4);
  CHECK(img.im_c_special);

  auto t = am_of("Z/12", "setshift:N=6");
  auto f2 = hom_of(g, t, "mul:3");
  CHECK(g.m().format(kernel(f2).ker) == "{0, 2, 4, 6, 8, 10}");

  auto z = hom_of(g, g, "zero");
  CHECK(kernel(z).ker.all());
  CHECK(image_q(z).classes.count() == 1);

  CHECK_THROWS_AS(hom_of(am_of("Z/4", "gen"), am_of("Z/4", "gen"), "table:[0,1,1,1]"),
                  PreconditionError);  // f(1 + 1) = 1 is not in <2>
}

TEST_CASE("isomorphism theorems on the worked examples") {
  auto g12 = am_of("Z/12", "gen");
  auto r1 = iso1(hom_of(g12, g12, "mul:3"));
  CHECK(r1.holds());
  CHECK(r1.map.source_classes == 4);
  CHECK(r1.map.target_classes == 4);
  CHECK(r1.map.exact_hom);

  auto g24 = am_of("Z/24", "gen");
  auto n = g24.m().parse_subset("4");
  auto k = g24.m().parse_subset("6");
  auto r2 = iso2(g24, n, k);
  CHECK(r2.holds());
  CHECK(r2.map.source_classes == 3);
  CHECK(r2.map.target_classes == 3);
  REQUIRE(r2.steps.size() == 1);
  CHECK(r2.steps[0].second);

  auto r3 = iso3(g24, g24.m().parse_subset("12"), k);
  CHECK(r3.holds());
  CHECK(r3.map.source_classes == 6);
  CHECK(r3.map.target_classes == 6);

  CHECK_THROWS_AS(iso3(g24, k, n), PreconditionError);
}

TEST_CASE("isomorphism theorems on the configured family") {
  struct Case {
    const char* module;
    const char* closure;
    const char* n;
    const char* k;
    const char* f;  // endomorphism for iso1
  };
  // N0 = (6) in Z/24 is not inside (4) or (8); (0,2) in Z/2xZ/4 is not
  // inside (1,0).
  const Case cases[] = {
      {"Z/8", "gen", "4", "2", "mul:2"},
      {"Z/8", "shift:N=4", "2", "4", "mul:3"},
      {"Z/8", "setshift:N=4", "4", "2", "mul:4"},
      {"Z/12", "gen", "4", "6", "mul:3"},
      {"Z/12", "gen", "3", "2", "mul:2"},
      {"Z/12", "shift:N=6", "4", "3", "mul:3"},
      {"Z/12", "shift:N=4", "6", "2", "mul:5"},
      {"Z/12", "setshift:N=6", "4", "6", "mul:2"},
      {"Z/24", "gen", "4", "6", "mul:6"},
      {"Z/24", "gen", "8", "12", "mul:4"},
      {"Z/24", "shift:N=6", "4", "8", "mul:3"},
      {"Z/24", "shift:N=12", "3", "8", "mul:2"},
      {"Z/24", "setshift:N=12", "4", "6", "mul:5"},
      {"Z/24", "shift:N=8", "6", "4", "mul:6"},
      {"Z/2xZ/4", "gen", "(1,0)", "(0,1)", "mul:2"},
      {"Z/2xZ/4", "gen", "(1,2)", "(0,2)", "mul:3"},
      {"Z/2xZ/4", "shift:N=(0,2)", "(1,0)", "(1,1)", "mul:2"},
      {"Z/2xZ/4", "setshift:N=(0,2)", "(1,0)", "(0,1)", "mul:3"},
      {"Z/2xZ/4", "shift:N=(1,0)", "(0,2)", "(1,2)", "mul:1"},
      {"Z/2xZ/4", "setshift:N=(1,2)", "(0,2)", "(1,0)", "mul:2"},
  };
  int instances = 0;
  for (const auto& c : cases) {
    INFO(c.module << " " << c.closure << " N = " << c.n << " K = " << c.k << " f = " << c.f);
    auto am = am_of(c.module, c.closure);
    const Module& m = am.m();
    RefGroup rg{m.orders()};
    auto rc = ref_of(rg, am, c.closure);
    ElemSet n = m.parse_subset(c.n), k = m.parse_subset(c.k);
    auto sn = to_set(n), sk = to_set(k);
    std::set<std::size_t> all;
    for (std::size_t x = 0; x < m.size(); ++x) all.insert(x);

    auto f = hom_of(am, am, c.f);
    auto r1 = iso1(f);
    CHECK(r1.holds());
    // Oracle: Ker f = {x : f(x) ∈ cl(0)}; |M/Ker f| against |f(M)| modulo cl(0).
    std::set<std::size_t> cl0 = rc({0}), ker, fm;
    for (auto x : all) {
      if (cl0.count(f(static_cast<Index>(x)))) ker.insert(x);
      fm.insert(f(static_cast<Index>(x)));
    }
    CHECK(r1.map.source_classes == rg.count_classes(all, rc(ker)));
    CHECK(r1.map.target_classes == rg.count_classes(fm, cl0));
    ++instances;

    auto r2 = iso2(am, n, k);
    CHECK(r2.holds());
    auto clk = rc(sk);
    std::set<std::size_t> meet;
    for (auto x : sn)
      if (clk.count(x)) meet.insert(x);
    CHECK(r2.map.source_classes == rg.count_classes(sn, rc(meet)));
    CHECK(r2.map.target_classes == rg.count_classes(rg.plus(sn, sk), clk));
    ++instances;

    // iso3 needs N ⊆ K; use N ∩ K for N when they are not nested.
    ElemSet n3 = n.is_subset_of(k) ? n : (n & k);
    auto r3 = iso3(am, n3, k);
    CHECK(r3.holds());
    CHECK(r3.map.target_classes == rg.count_classes(all, rc(clk)));
    ++instances;
  }
  CHECK(instances >= 20);
}

TEST_CASE("kernels of image-morphic maps are approximate submodules") {
  // Every endomorphism table of small modules that passes the approximate
  // hom test, under every closure of the family.
  std::mt19937_64 rng(20240601);
  int checked = 0, morphic = 0;
  for (const char* mod : {"Z/4", "Z/6", "Z/2xZ/2"}) {
    auto m = Module::parse(mod);
    std::vector<std::string> closures{"gen"};
    for (const auto& h : enumerate_subgroups(m.carrier(), 64)) {
      if (h.count() == 1) continue;
      std::string gens;
      for (Index x : members(h)) gens += (gens.empty() ? "" : ",") + m.label(x);
      closures.push_back("shift:N={" + gens + "}");
      closures.push_back("setshift:N={" + gens + "}");
    }
    for (const auto& cs : closures) {
      auto am = ApproxModule::of(m, ModuleClosureSpec::parse(m, cs));
      for (int trial = 0; trial < 400; ++trial) {
        std::vector<Index> t(m.size());
        t[0] = 0;
        for (std::size_t x = 1; x < t.size(); ++x) t[x] = static_cast<Index>(rng() % m.size());
        if (!ApproxHom::check(am, am, t)) continue;
        ApproxHom f(am, am, t);
        ++checked;
        if (!is_image_morphic(f, AxiomMode::exhaustive())) continue;
        ++morphic;
        auto k = kernel(f);
        CHECK_MESSAGE(k.subgroup, mod << " " << cs);
        REQUIRE(k.approx_submodule);
        CHECK(*k.approx_submodule);
      }
    }
  }
  CHECK(checked > 50);
  CHECK(morphic > 10);
}

TEST_CASE("quotients are representative-independent for every approximate submodule") {
  for (const char* mod : {"Z/8", "Z/12", "Z/2xZ/4"}) {
    auto m = Module::parse(mod);
    auto subs = enumerate_subgroups(m.carrier(), 64);
    std::vector<ApproxModule> family{ApproxModule::of(m, {GeneratedSubmodule{}})};
    for (const auto& h : subs) {
      family.push_back(ApproxModule::of(m, {SubmoduleShift{h}}));
      family.push_back(ApproxModule::of(m, {SubmoduleSetShift{h}}));
    }
    for (const auto& am : family)
      for (const auto& n : subs) {
        if (!is_approx_submodule(am, n)) continue;
        auto q = module_quotient(am, n);
        CHECK_MESSAGE(q.equivalence, mod << " " << am.closure_name << " N = " << m.format(n));
        CHECK_MESSAGE(q.well_defined, mod << " " << am.closure_name << " N = " << m.format(n));
      }
  }
}

TEST_CASE("non-additive approximate homs are checked, not assumed") {
  // Under cl(X) = <X> + Z/4 every table is an approximate hom.
  auto m = Module::parse("Z/4");
  auto coarse = ApproxModule::of(m, {SubmoduleShift{m.full_set()}});
  ApproxHom f(coarse, coarse, {0, 2, 1, 3});
  CHECK_FALSE(f.additive());
  auto r = iso1(f);
  // cl(0) is everything, so both sides collapse to one class.
  CHECK(r.map.source_classes == 1);
  CHECK(r.map.target_classes == 1);
  CHECK(r.holds());

  // Under <X> alone, f = [0,1,0,1] still passes: f(x + y) always lies in
  // <f(x) + f(y)>. Ker f = {0, 2}, so both sides have 2 classes, and the
  // induced map is an approximate but not an exact hom.
  auto g = ApproxModule::of(m, {GeneratedSubmodule{}});
  ApproxHom h(g, g, {0, 1, 0, 1});
  CHECK_FALSE(h.additive());
  CHECK(m.format(kernel(h).ker) == "{0, 2}");
  auto rh = iso1(h);
  CHECK(rh.holds());
  CHECK(rh.map.source_classes == 2);
  CHECK_FALSE(rh.map.exact_hom);
}

TEST_CASE("module checks agree serially and in parallel") {
  auto am = am_of("Z/24", "shift:N=8");
  auto n = am.m().parse_subset("4"), k = am.m().parse_subset("6");
  auto a = iso2(am, n, k, true), b = iso2(am, n, k, false);
  CHECK(a.map.source_classes == b.map.source_classes);
  CHECK(a.map.hom.witness == b.map.hom.witness);
  CHECK(a.map.hom_instances == b.map.hom_instances);
  auto f = hom_of(am, am, "mul:5");
  CHECK(is_image_morphic(f, AxiomMode::subgroups(), true).holds ==
        is_image_morphic(f, AxiomMode::subgroups(), false).holds);
  CHECK(relation_quotient(am, am.cl(n), true).class_of ==
        relation_quotient(am, am.cl(n), false).class_of);
}
