// One pass/fail line per acceptance criterion. Exit status 0 only when all
// nine pass.

#include "approx/axioms.hpp"
#include "approx/cli.hpp"
#include "approx/errors.hpp"
#include "approx/ideal.hpp"
#include "approx/localization.hpp"
#include "approx/modules.hpp"
#include "approx/nullstellensatz.hpp"
#include "approx/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace approx;

namespace {

constexpr double kCriterion1Seconds = 5.0;
constexpr double kCriterion3Seconds = 10.0;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::string failure;  // first failure, when any
  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ClosureSpec z_shift(std::uint64_t m) {
  return ClosureSpec::parse(Ring::integers(), "shift:J=" + std::to_string(m));
}

// Ideal generators of Z/12 and Z/2 x Z/2, one per ideal.
const std::vector<std::pair<std::string, std::vector<std::string>>>& small_rings() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> rings{
      {"Zn:12", {"0", "1", "2", "3", "4", "6"}},
      {"prod:[Zn:2,Zn:2]", {"(0,0)", "(1,0)", "(0,1)", "(1,1)"}},
  };
  return rings;
}

Outcome criterion1() {
  Outcome o;
  int exact = 0;
  for (std::uint64_t m = 2; m <= 120; ++m) {
    auto sp = spectrum(z_shift(m));
    std::vector<std::string> want;
    for (std::uint64_t p = 2; p <= m; ++p)
      if (m % p == 0 && is_prime(p)) want.push_back("(" + std::to_string(p) + ")");
    if (sp.labels != want) {
      o.fail("m = " + std::to_string(m) + ": spectrum differs from {(p) : p | m}");
      continue;
    }
    if (sp.bound != std::max<std::uint64_t>(1000, m))
      o.fail("m = " + std::to_string(m) + ": brute-force bound " + std::to_string(sp.bound));
    else if (!sp.cross_check || !*sp.cross_check)
      o.fail("m = " + std::to_string(m) + ": brute force disagrees: " +
             (sp.cross_check ? sp.cross_check->witness : "not run"));
    else
      ++exact;
  }
  o.summary = std::to_string(exact) + "/119 moduli exact, brute force d <= max(1000, m) found no other prime";
  return o;
}

Outcome criterion2() {
  Outcome o;
  int cases = 0;
  for (std::uint64_t m = 2; m <= 60; ++m) {
    auto cl = z_shift(m);
    for (std::uint64_t p = 2; p <= 100; ++p) {
      if (!is_prime(p)) continue;
      ++cases;
      bool want = m % p == 0;
      bool closed = z_is_approx_prime_closed(cl, p).holds;
      bool brute = z_is_approx_prime_brute(cl, p).holds;
      if (closed != want || brute != want)
        o.fail("m = " + std::to_string(m) + ", p = " + std::to_string(p) + ": closed form " +
               (closed ? "prime" : "not prime") + ", brute force " + (brute ? "prime" : "not prime"));
    }
  }
  o.summary = std::to_string(cases) + " (p, m) pairs, closed form and brute force both match p | m";
  return o;
}

Outcome criterion3() {
  Outcome o;
  int suites = 0;
  std::uint64_t instances = 0;
  for (const auto& [ring_text, gens] : small_rings()) {
    auto r = Ring::parse(ring_text);
    for (const auto& family : {"shift", "setshift"})
      for (const auto& g : gens) {
        std::string text = std::string(family) + ":J=" + g;
        auto rep = check_axioms(ClosureSpec::parse(r, text), AxiomMode::exhaustive());
        ++suites;
        for (const auto& v : rep.verdicts) {
          instances += v.domain;
          if (!v.pass)
            o.fail(ring_text + " " + text + ": " + axiom_name(v.axiom) + " " +
                   v.counterexample->text);
        }
      }
  }
  o.summary = std::to_string(suites) + " closures, C1-C4b and absorption over all subsets, " +
              std::to_string(instances) + " instances, 0 violations";
  return o;
}

Outcome criterion4() {
  Outcome o;
  int spaces = 0;
  auto laws = [&](const std::string& name, const Spectrum& sp) {
    auto t = topology_check(sp);
    ++spaces;
    for (const auto& [law, v] : {std::pair{"V(I+J)", t.intersection_law},
                                 std::pair{"V(IJ)", t.union_law}, std::pair{"T0", t.t0}})
      if (!v) o.fail(name + ": " + law + " " + v.witness);
    return t;
  };
  for (const auto& [ring_text, gens] : {small_rings()[0]}) {
    auto r = Ring::parse(ring_text);
    for (const auto& family : {"shift", "setshift"})
      for (const auto& g : gens) {
        std::string text = std::string(family) + ":J=" + g;
        laws(ring_text + " " + text, spectrum(ClosureSpec::parse(r, text)));
      }
  }
  for (std::uint64_t m : {12, 30}) {
    auto t = laws("Z shift:J=" + std::to_string(m), spectrum(z_shift(m)));
    if (!t.t1_closed_points || !t.discrete)
      o.fail("Z shift:J=" + std::to_string(m) + ": spectrum not T1 and discrete");
  }
  auto classical = spectrum(ClosureSpec::parse(Ring::integers(), "gen"));
  auto t = laws("Z gen", classical);
  if (t.t1_closed_points) o.fail("Z gen: T1 holds within the bounded enumeration");
  if (!classical.bounded()) o.fail("Z gen: enumeration not flagged as bounded");
  o.summary = std::to_string(spaces) + " spectra satisfy both closed-set laws and T0; T1 on Z/(m) "
              "for m = 12, 30; T1 fails for Z gen (bounded, d <= " + std::to_string(classical.bound) + ")";
  return o;
}

LocalizedRing criterion5_instance() {
  auto z = Ring::integers();
  return localize(z_shift(30), parse_element_list(z, "2"));
}

Outcome criterion5() {
  Outcome o;
  auto l = criterion5_instance();
  if (!l.equivalence || !l.well_defined) {
    o.fail("localization not well defined: " + l.equivalence.witness + l.well_defined.witness);
    return o;
  }
  auto bij = check_ext_contr_bijection(l);
  if (!bij.verdict) o.fail("extension/contraction: " + bij.verdict.witness);
  std::set<std::string> avoiding;
  for (const auto& [p, pe] : bij.pairs) avoiding.insert(p);
  if (avoiding != std::set<std::string>{"(3)", "(5)"} || bij.local_primes != 2)
    o.fail("matched primes are not {(3), (5)}");
  // 2^15 subsets: the pair cap is raised so the suite runs on every pair.
  CheckOptions opt;
  opt.pair_cap = std::uint64_t{1} << 30;
  auto ax = check_transfer_axioms(l, AxiomMode::exhaustive(), opt);
  for (const auto& v : ax.verdicts)
    if (!v.pass) o.fail("transferred closure: " + axiom_name(v.axiom) + " " + v.counterexample->text);
  auto ri = check_rep_independence(l, AxiomMode::exhaustive());
  if (!ri.verdict) o.fail("representative independence: " + ri.verdict.witness);
  o.summary = "Z, m = 30, S = <2>: " + std::to_string(l.size()) +
              " classes, P <-> S^-1 P bijective onto {(3), (5)} with both round trips, "
              "transferred closure passes all axioms over all " +
              std::to_string(std::uint64_t{1} << l.size()) + " subsets, representative-independent on " +
              std::to_string(ri.sets) + " sets";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (std::uint64_t n = 2; n <= 60; ++n) {
    auto r = Ring::residue(n);
    auto rn = check_rad_eq_nil(ApproxRing::of(ClosureSpec::parse(r, "gen")));
    if (!rn.equal) o.fail("Z/" + std::to_string(n) + ": rad(0) = " + rn.rad + ", ∩ Spec = " + rn.prim);
  }
  for (std::uint64_t m = 2; m <= 120; ++m) {
    auto rn = z_check_rad_eq_nil(z_shift(m));
    if (!rn.equal) o.fail("Z m = " + std::to_string(m) + ": rad(0) = " + rn.rad + ", ∩ Spec = " + rn.prim);
  }
  if (z_radical(z_shift(12), 0) != 6) o.fail("Z m = 12: rad(0) is not (6)");
  auto loc = check_rad_eq_nil(criterion5_instance());
  if (!loc.equal) o.fail("localized instance: rad(0) = " + loc.rad + ", ∩ Spec = " + loc.prim);
  o.summary = "rad(0) = ∩ Spec on Z/n for n = 2..60, on Z modular for m = 2..120 (m = 12 gives (6)), "
              "and on the localized instance";
  return o;
}

Outcome criterion7() {
  struct Case {
    const char *module, *closure, *n, *k, *f;
  };
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
  Outcome o;
  int maps = 0;
  for (const auto& c : cases) {
    auto m = Module::parse(c.module);
    auto am = ApproxModule::of(m, ModuleClosureSpec::parse(m, c.closure));
    auto n = m.parse_subset(c.n), k = m.parse_subset(c.k);
    ApproxHom f(am, am, ApproxHom::parse_table(am, am, c.f));
    // iso3 needs N ⊆ K; N ∩ K stands in when the pair is not nested.
    ElemSet n3 = n.is_subset_of(k) ? n : (n & k);
    for (const auto& r : {iso1(f), iso2(am, n, k), iso3(am, n3, k)}) {
      ++maps;
      if (!r.holds() || !r.counts_agree())
        o.fail(std::string(c.module) + " " + c.closure + " " + r.part + ": " + r.lhs + " -> " + r.rhs +
               " has " + std::to_string(r.map.source_classes) + " vs " +
               std::to_string(r.map.target_classes) + " classes");
    }
  }
  o.summary = std::to_string(std::size(cases)) + " instances over Z/8, Z/12, Z/24, Z/2xZ/4, " +
              std::to_string(maps) + " maps (iso1, iso2, iso3) bijective and approximately additive, "
              "class counts agree";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t ideals_checked = 0;
  for (auto [p, n] : {std::pair{2u, 1u}, std::pair{2u, 2u}}) {
    auto r = Ring::functions(p, n);
    auto fc = FunctionClosure::of(ClosureSpec::parse(r, "pointwise"));
    auto ideals = enumerate_ideals(r.finite(), r.finite().size());
    try {
      auto ans = check_ans(fc, ideals);
      if (!ans.equality) o.fail(r.to_string() + ": " + ans.equality.witness);
      ideals_checked += ans.ideals;
    } catch (const PreconditionError& e) {
      o.fail(r.to_string() + ": " + e.what());
    }
    if (n == 2 && ideals.size() < 10) o.fail("Fun(2,2) family has fewer than 10 ideals");
  }
  auto tol = check_tolerance_balanced(tolerance_grid());
  if (tol.cases != 100) o.fail("tolerance grid has " + std::to_string(tol.cases) + " cases");
  if (!tol.verdict) o.fail("tolerance balanced rule: " + tol.verdict.witness);
  o.summary = "ESEP and PP verified, rad(I) = I(V(I)) on " + std::to_string(ideals_checked) +
              " ideals of Fun(2,1) and Fun(2,2); tolerance balanced rule on " +
              std::to_string(tol.cases) + " cases (" + std::to_string(tol.members) + " memberships)";
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto outcomes = cli::run_suite(cli::Suite::parse(cli::bundled_suite("paper-examples")));
  for (const char* name : {"gray-pixel", "noisy-codeword"}) {
    auto it = std::find_if(outcomes.begin(), outcomes.end(),
                           [&](const cli::ScenarioOutcome& s) { return s.name == name; });
    if (it == outcomes.end())
      o.fail(std::string(name) + " scenario missing");
    else if (!it->pass)
      o.fail(std::string(name) + ": " + it->diff.front());
  }
  auto z3 = Ring::parse("prod:[Z,Z,Z]");
  if (!closure_member(ClosureSpec::parse(z3, "shift:J=(5,5,5)"), z3.parse_element("(130,135,125)"),
                      parse_element_list(z3, "(1,1,1)")))
    o.fail("(130,135,125) not in cl(G)");
  auto f = Ring::parse("GF:2/x^5");
  if (!closure_member(ClosureSpec::parse(f, "setshift:J=x"), f.parse_element("x^4+x^3+x+1"),
                      parse_element_list(f, "x^4+x^3+1")))
    o.fail("c' not in cl({c})");
  o.summary = "(130,135,125) ∈ cl(G) with m = 5 and c' ∈ cl({c}) with J = <x>, as scenarios and directly";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    double limit;  // seconds, 0 = none
  };
  const Criterion criteria[] = {
      {1, "spectrum closed form on Z", criterion1, kCriterion1Seconds},
      {2, "modular primes (p) iff p | m", criterion2, 0},
      {3, "axiom suites on Z/12 and Z/2xZ/2", criterion3, kCriterion3Seconds},
      {4, "topology laws", criterion4, 0},
      {5, "localization at S = <2>, m = 30", criterion5, 0},
      {6, "rad(0) = ∩ Spec", criterion6, 0},
      {7, "module isomorphism theorems", criterion7, 0},
      {8, "nullstellensatz schema", criterion8, 0},
      {9, "worked examples as scenarios", criterion9, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("error: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) o.fail("took " + std::to_string(secs) + " s");
    char timing[64];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::printf("criterion %d %s %s: %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.pass ? o.summary.c_str() : o.failure.c_str(), timing);
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
