#include "approx/cli.hpp"

#include "approx/axioms.hpp"
#include "approx/errors.hpp"
#include "approx/ideal.hpp"
#include "approx/localization.hpp"
#include "approx/modules.hpp"
#include "approx/nullstellensatz.hpp"
#include "approx/spectrum.hpp"
#include "detail/parallel.hpp"
#include "paper_examples.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace approx::cli {

using json = nlohmann::ordered_json;

namespace {

const OptionInfo kRing{"ring", "ring, e.g. Z, Zn:12, prod:[Zn:2,Zn:2], GF:2/x^5, Fun:p=2,n=2"};
const OptionInfo kClosure{"closure", "closure: gen | shift:J=.. | setshift:J=.. | pointwise | sample:[..]"};
const OptionInfo kIdeal{"ideal", "ideal generators, e.g. 12 or x1*x2"};
const OptionInfo kMode{"mode", "exhaustive | subgroups | sampled (default: exhaustive when it fits the pair cap, else subgroups)"};
const OptionInfo kSeed{"seed", "seed for sampled mode"};
const OptionInfo kCount{"count", "subsets drawn in sampled mode"};
const OptionInfo kBound{"bound", "Z: largest generator searched (0 = max(1000, m))"};
const OptionInfo kGuard{"guard", "largest finite ring enumerated for subgroups"};

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table{
      {"axioms",
       "check C1-C4b and ideal absorption",
       {kRing, kClosure, kMode, kSeed, kCount, kBound, kGuard,
        {"sum", "reading of X + Y in C4a: subgroup | minkowski"}}},
      {"spec", "enumerate the approximate primes", {kRing, kClosure, kBound, kGuard}},
      {"vset", "V(I) in the spectrum", {kRing, kClosure, kIdeal, kBound, kGuard}},
      {"dset", "D(f) in the spectrum", {kRing, kClosure, {"elem", "ring element f"}, kBound, kGuard}},
      {"is-prime", "is the ideal approximately prime", {kRing, kClosure, kIdeal, kBound}},
      {"product",
       "approximate product of two ideals",
       {kRing, kClosure, {"ideal", "ideal generators (give twice)", false, true}}},
      {"quotient", "R / cl(I) with its class table", {kRing, kClosure, kIdeal}},
      {"topology", "closed-set laws and separation axioms", {kRing, kClosure, kBound, kGuard, kSeed}},
      {"localize",
       "localization at a multiplicative set",
       {kRing, kClosure, {"mult-set", "generators of S"}, kMode, kSeed, kCount}},
      {"radical", "approximate radical and rad(0) = ∩ Spec", {kRing, kClosure, kIdeal}},
      {"member", "is an element in cl(A)", {kRing, kClosure, {"elem", "element"}, {"set", "elements of A"}}},
      {"modules",
       "approximate modules and the isomorphism theorems",
       {{"module", "module, e.g. Z/12 or Z/2xZ/4"},
        {"scalars", "scalar ring: Z (default) or Zn:n"},
        {"closure", "gen | shift:N=.. | setshift:N=.."},
        {"op", "axioms | submodule | quotient | kernel | iso1 | iso2 | iso3"},
        {"sub", "N: submodule generators, {..} for a set, M for the whole module"},
        {"sub2", "K for iso2 and iso3"},
        {"hom", "mul:k | zero | table:[..]"},
        {"target-module", "codomain module (default: the source)"},
        {"target-closure", "closure on the codomain"},
        kMode,
        kSeed,
        kCount}},
      {"nullstellensatz",
       "ESEP, PP and rad(I) = I(V(I)) on function rings",
       {kRing, kClosure, kIdeal, {"op", "check | variety | remark | tolerance"}}},
      {"scenario",
       "run a scenario suite",
       {{"file", "suite file (JSON)"}, {"suite", "bundled suite name (default paper-examples)"}}},
  };
  return table;
}

const std::vector<OptionInfo> kGlobal{{"format", "json | table (default table)"},
                                      {"timing", "record wall time in the report", true},
                                      {"serial", "run kernels without threads", true}};

const CommandInfo& command_info(const std::string& name) {
  for (const auto& c : command_table())
    if (c.name == name) return c;
  throw PreconditionError("usage", "unknown command '" + name + "'");
}

bool is_global(const std::string& name) {
  return std::any_of(kGlobal.begin(), kGlobal.end(),
                     [&](const OptionInfo& o) { return o.name == name; });
}

// ------------------------------------------------------------ option access

struct Args {
  const Invocation& inv;
  const std::vector<std::string>* values(const std::string& name) const {
    auto it = inv.options.find(name);
    return it == inv.options.end() || it->second.empty() ? nullptr : &it->second;
  }
  bool has(const std::string& name) const { return values(name) != nullptr; }
  std::string get(const std::string& name) const {
    if (auto v = values(name)) return v->front();
    throw PreconditionError("usage", inv.command + " needs --" + name);
  }
  std::string get(const std::string& name, const std::string& fallback) const {
    auto v = values(name);
    return v ? v->front() : fallback;
  }
  std::uint64_t number(const std::string& name, std::uint64_t fallback) const {
    auto v = values(name);
    if (!v) return fallback;
    const std::string& s = v->front();
    try {
      std::size_t pos = 0;
      auto n = std::stoull(s, &pos, 0);
      if (pos != s.size()) throw ParseError("trailing characters in --" + name, pos);
      return n;
    } catch (const std::logic_error&) {
      throw ParseError("--" + name + " expects a nonnegative integer, got '" + s + "'", 0);
    }
  }
  bool parallel() const { return !has("serial"); }

  Ring ring() const { return Ring::parse(get("ring")); }
  ClosureSpec closure(const Ring& r) const { return ClosureSpec::parse(r, get("closure", "gen")); }

  AxiomMode mode(std::size_t size) const {
    // Exhaustive by default while the C4a pair count fits under the cap.
    bool fits = size <= kExhaustiveMaxSize &&
                ((std::uint64_t{1} << size) * ((std::uint64_t{1} << size) + 1)) / 2 <= kDefaultPairCap;
    std::string m = get("mode", fits ? "exhaustive" : "subgroups");
    if (m == "exhaustive") return AxiomMode::exhaustive();
    if (m == "subgroups") return AxiomMode::subgroups();
    if (m == "sampled")
      return AxiomMode::sampled(number("seed", kDefaultSeed), number("count", kDefaultSampleCount));
    throw PreconditionError("usage", "--mode must be exhaustive, subgroups or sampled");
  }
  SpectrumOptions spectrum_options() const {
    SpectrumOptions o;
    o.parallel = parallel();
    o.bound = number("bound", 0);
    o.guard = number("guard", kDefaultSubgroupGuard);
    return o;
  }
};

Subset parse_ideal(const Ring& r, const std::string& text) {
  return ideal_generated(r, parse_element_list(r, text)).canonical;
}

json string_list(const std::vector<std::string>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

json labels_at(const Spectrum& sp, const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(sp.labels[i]);
  return a;
}

std::string method_name(const Spectrum& sp) {
  switch (sp.method) {
    case Spectrum::Method::ClosedForm:
      return "closed-form";
    case Spectrum::Method::Exhaustive:
      return "exhaustive";
    case Spectrum::Method::Bounded:
      return "bounded";
  }
  return "";
}

std::string mode_text(const AxiomMode& m) {
  if (m.kind != AxiomMode::Sampled) return m.name();
  return m.name() + " seed=" + std::to_string(m.seed) + " count=" + std::to_string(m.count);
}

// Per-axiom lines, with a replay check for each counterexample.
void report_axioms(Report& rep, const AxiomReport& ar, bool module_names,
                   const std::function<bool(const Counterexample&)>& replays) {
  rep.info("mode", mode_text(ar.mode), ar.domain_note);
  if (ar.bounded) rep.info("bounded", true);
  for (const auto& v : ar.verdicts) {
    const std::string name = axiom_name(v.axiom, module_names);
    if (v.pass) {
      rep.check(name, true, std::to_string(v.domain) + " instances");
      continue;
    }
    const auto& cx = *v.counterexample;
    rep.check(name, Verdict::fail(cx.text));
    if (replays) rep.check(name + "-replays", replays(cx));
  }
}

// ----------------------------------------------------------------- commands

Report cmd_axioms(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  IntegerBounds bounds;
  if (a.has("bound")) bounds.d_max = a.number("bound", bounds.d_max);
  CheckOptions opt;
  opt.parallel = a.parallel();
  opt.subgroup_guard = a.number("guard", kDefaultSubgroupGuard);
  std::string sum = a.get("sum", "subgroup");
  if (sum == "minkowski")
    opt.sum = SumReading::Minkowski;
  else if (sum != "subgroup")
    throw PreconditionError("usage", "--sum must be subgroup or minkowski");
  std::size_t size = r.is_finite() ? r.finite().size() : 0;
  auto ar = check_axioms(cl, a.mode(size), bounds, opt);
  std::function<bool(const Counterexample&)> replays;
  if (r.is_finite()) {
    auto carrier = Carrier::of_ring(r.finite());
    auto compiled = compile_closure(cl);
    replays = [carrier, compiled](const Counterexample& cx) { return replay(carrier, compiled, cx); };
  } else {
    replays = [cl](const Counterexample& cx) { return replay_integer(cl, cx); };
  }
  report_axioms(rep, ar, false, replays);
  return rep;
}

void spectrum_lines(Report& rep, const Spectrum& sp) {
  rep.info("spectrum", string_list(sp.labels), sp.domain_note);
  rep.info("method", method_name(sp));
  rep.info("candidates", sp.candidates);
  if (sp.bound) rep.info("bound", sp.bound);
  if (sp.cross_check) rep.check("closed-form-vs-brute-force", *sp.cross_check);
}

Report cmd_spec(const Args& a, Report rep) {
  auto r = a.ring();
  spectrum_lines(rep, spectrum(a.closure(r), a.spectrum_options()));
  return rep;
}

Report cmd_vset(const Args& a, Report rep) {
  auto r = a.ring();
  auto sp = spectrum(a.closure(r), a.spectrum_options());
  auto i = parse_ideal(r, a.get("ideal"));
  rep.info("ideal", i.to_string());
  rep.info("vset", labels_at(sp, v_set(sp, ideal_value(i))));
  rep.info("spectrum", string_list(sp.labels));
  return rep;
}

Report cmd_dset(const Args& a, Report rep) {
  auto r = a.ring();
  auto sp = spectrum(a.closure(r), a.spectrum_options());
  auto f = r.parse_element(a.get("elem"));
  rep.info("elem", f.to_string());
  rep.info("dset", labels_at(sp, d_set(sp, f)));
  rep.info("spectrum", string_list(sp.labels));
  return rep;
}

Report cmd_is_prime(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  auto p = parse_ideal(r, a.get("ideal"));
  rep.info("ideal", p.to_string());
  if (r.kind() == RingKind::Integers) {
    auto d = static_cast<std::uint64_t>(p.generator());
    auto closed = z_is_approx_prime_closed(cl, d);
    auto brute = z_is_approx_prime_brute(cl, d, a.number("bound", 0), a.parallel());
    rep.info("approx-prime", closed.holds, closed.witness);
    rep.check("closed-form-vs-brute-force", closed.holds == brute.holds,
              closed.holds == brute.holds ? std::string()
                                          : "brute force says " + std::string(brute.holds ? "prime" : "not prime") +
                                                (brute.witness.empty() ? "" : ": " + brute.witness));
    return rep;
  }
  auto v = is_approx_prime(cl, p);
  rep.info("approx-prime", v.holds, v.witness);
  return rep;
}

Report cmd_product(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  auto v = a.values("ideal");
  if (!v || v->size() != 2) throw PreconditionError("usage", "product needs --ideal twice");
  auto i = parse_ideal(r, (*v)[0]), j = parse_ideal(r, (*v)[1]);
  rep.info("product", approx_product(cl, i, j).to_string());
  return rep;
}

Report cmd_quotient(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  auto i = parse_ideal(r, a.get("ideal"));
  QuotientRing q = r.kind() == RingKind::Integers
                       ? z_quotient_ring(cl, static_cast<std::uint64_t>(i.generator()))
                       : quotient_ring(ApproxRing::of(cl), i.set());
  if (r.is_finite()) rep.info("closure", r.finite().format_set(q.closure));
  rep.info("classes", q.size());
  rep.check("equivalence", q.equivalence);
  rep.check("well-defined", q.well_defined);
  if (q.ring) {
    json reps = json::array();
    for (Index c = 0; c < q.size(); ++c) reps.push_back(q.ring->label(c));
    rep.info("class-labels", reps);
  }
  if (q.ring_axioms_violation) rep.check("ring-axioms", Verdict::fail(*q.ring_axioms_violation));
  return rep;
}

Report cmd_topology(const Args& a, Report rep) {
  auto r = a.ring();
  auto sp = spectrum(a.closure(r), a.spectrum_options());
  auto t = topology_check(sp, a.number("seed", kDefaultSeed));
  rep.info("spectrum", string_list(sp.labels));
  rep.info("ideals", t.ideals);
  rep.check("whole-and-empty", t.whole_and_empty);
  rep.check("intersection-law", t.intersection_law);
  rep.check("union-law", t.union_law);
  rep.check("T0", t.t0);
  rep.info("T1", t.t1_closed_points, t.t1_witness);
  rep.check("T1-characterizations-agree", t.t1_agree());
  rep.check("quasi-compact", t.quasi_compact);
  rep.info("discrete", t.discrete);
  rep.info("primes-closed", t.primes_closed.holds, t.primes_closed.witness);
  rep.info("closed-ideals-under-primes", t.closed_ideals_under_primes.holds,
           t.closed_ideals_under_primes.witness);
  if (sp.bounded()) rep.info("bounded", true, sp.domain_note);
  return rep;
}

Report cmd_localize(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  auto l = localize(cl, parse_element_list(r, a.get("mult-set")), a.parallel());
  rep.info("S", l.S.elements.count());
  rep.info("pairs", l.pairs());
  rep.info("classes", l.size());
  rep.check("equivalence", l.equivalence);
  rep.check("well-defined", l.well_defined);
  if (!l.equivalence || !l.well_defined) return rep;
  if (l.ring_axioms_violation) {
    rep.check("ring-axioms", Verdict::fail(*l.ring_axioms_violation));
    return rep;
  }
  auto bij = check_ext_contr_bijection(l);
  json pairs = json::array();
  for (const auto& [p, pe] : bij.pairs) pairs.push_back(p + " -> " + pe);
  rep.info("matched-primes", pairs);
  rep.info("base-primes", bij.base_primes);
  rep.info("avoiding-S", bij.avoiding);
  rep.info("local-primes", bij.local_primes);
  rep.check("ext-contr-bijection", bij.verdict);
  auto mode = a.mode(l.size());
  auto ri = check_rep_independence(l, mode, a.parallel());
  rep.check("representative-independence", ri.verdict);
  CheckOptions opt;
  opt.parallel = a.parallel();
  auto ax = check_transfer_axioms(l, mode, opt);
  rep.info("mode", mode_text(ax.mode));
  for (const auto& v : ax.verdicts)
    rep.check("transfer-" + axiom_name(v.axiom),
              v.pass ? Verdict::ok() : Verdict::fail(v.counterexample->text));
  auto rn = check_rad_eq_nil(l);
  rep.check("rad=nil", rn.equal, "rad(0) = " + rn.rad + ", ∩ Spec = " + rn.prim);
  return rep;
}

Report cmd_radical(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  if (r.kind() == RingKind::Integers) {
    auto d = static_cast<std::uint64_t>(parse_ideal(r, a.get("ideal", "0")).generator());
    rep.info("radical", "(" + std::to_string(z_radical(cl, d)) + ")");
    auto rn = z_check_rad_eq_nil(cl);
    rep.check("rad=nil", rn.equal, "rad(0) = " + rn.rad + ", ∩ Spec = " + rn.prim);
    return rep;
  }
  auto ar = ApproxRing::of(cl);
  auto i = parse_ideal(r, a.get("ideal", "0"));
  auto rad = radical(ar, i.set());
  rep.info("radical", ar.r().format_set(rad.radical));
  rep.info("max-exponent", rad.max_exponent);
  rep.check("exponent-within-bound", rad.within_bound);
  auto rn = check_rad_eq_nil(ar);
  rep.check("rad=nil", rn.equal, "rad(0) = " + rn.rad + ", ∩ Spec = " + rn.prim);
  return rep;
}

Report cmd_member(const Args& a, Report rep) {
  auto r = a.ring();
  auto cl = a.closure(r);
  auto x = r.parse_element(a.get("elem"));
  auto set = parse_element_list(r, a.get("set"));
  rep.info("member", closure_member(cl, x, set), x.to_string() + " in cl(A)");
  return rep;
}

void iso_lines(Report& rep, const IsoResult& res) {
  rep.info("map", res.lhs + " -> " + res.rhs);
  rep.info("source-classes", res.map.source_classes);
  rep.info("target-classes", res.map.target_classes);
  for (const auto& [name, v] : res.steps) rep.check(name, v);
  rep.check("total", res.map.total);
  rep.check("well-defined", res.map.well_defined);
  rep.check("injective", res.map.injective);
  rep.check("surjective", res.map.surjective);
  rep.check("hom", res.map.hom);
  rep.info("exact-hom", res.map.exact_hom);
  rep.check("class-counts-agree", res.counts_agree());
  if (!res.hypotheses.empty()) rep.info("hypotheses", res.hypotheses);
}

Report cmd_modules(const Args& a, Report rep) {
  Ring scalars = a.has("scalars") ? Ring::parse(a.get("scalars")) : Ring::integers();
  auto m = Module::parse(a.get("module"), scalars);
  auto am = ApproxModule::of(m, ModuleClosureSpec::parse(m, a.get("closure", "gen")));
  const std::string op = a.get("op", "axioms");
  rep.info("module", m.name() + " with " + am.closure_name);
  auto sub = [&](const char* key) { return m.parse_subset(a.get(key)); };
  auto hom = [&] {
    ApproxModule dst = am;
    if (a.has("target-module")) {
      auto t = Module::parse(a.get("target-module"), scalars);
      dst = ApproxModule::of(t, ModuleClosureSpec::parse(t, a.get("target-closure", "gen")));
    } else if (a.has("target-closure")) {
      dst = ApproxModule::of(m, ModuleClosureSpec::parse(m, a.get("target-closure")));
    }
    return ApproxHom(am, dst, ApproxHom::parse_table(am, dst, a.get("hom")), a.parallel());
  };
  if (op == "axioms") {
    CheckOptions opt;
    opt.parallel = a.parallel();
    opt.module_names = true;
    auto carrier = m.carrier();
    auto cl = am.cl;
    report_axioms(rep, check_cm_axioms(am, a.mode(m.size()), opt), true,
                  [carrier, cl](const Counterexample& cx) { return replay(carrier, cl, cx); });
  } else if (op == "submodule") {
    auto n = sub("sub");
    rep.info("N", m.format(n));
    rep.check("approx-submodule", is_approx_submodule(am, n));
  } else if (op == "quotient") {
    auto q = module_quotient(am, sub("sub"), a.parallel());
    rep.info("classes", q.size());
    rep.check("equivalence", q.equivalence);
    rep.check("well-defined", q.well_defined);
  } else if (op == "kernel") {
    auto f = hom();
    auto k = kernel(f);
    rep.info("kernel", m.format(k.ker));
    rep.check("subgroup", k.subgroup);
    if (k.approx_submodule) rep.check("approx-submodule", *k.approx_submodule);
    auto im = image_q(f, a.parallel());
    rep.info("image-classes", im.classes.count());
    rep.info("im-c", f.dst().m().format(im.im_c));
    rep.info("im-c-special", im.im_c_special);
  } else if (op == "iso1") {
    std::optional<AxiomMode> mode;
    if (a.has("mode")) mode = a.mode(m.size());
    iso_lines(rep, iso1(hom(), mode, a.parallel()));
  } else if (op == "iso2") {
    iso_lines(rep, iso2(am, sub("sub"), sub("sub2"), a.parallel()));
  } else if (op == "iso3") {
    iso_lines(rep, iso3(am, sub("sub"), sub("sub2"), a.parallel()));
  } else {
    throw PreconditionError("usage", "unknown --op '" + op + "' for modules");
  }
  return rep;
}

Report cmd_nullstellensatz(const Args& a, Report rep) {
  const std::string op = a.get("op", "check");
  if (op == "tolerance") {
    auto res = check_tolerance_balanced(tolerance_grid());
    rep.info("cases", res.cases);
    rep.info("members", res.members);
    rep.info("unit-bounded-cases", res.unit_bounded);
    rep.check("tolerance-balanced", res.verdict);
    return rep;
  }
  auto r = a.ring();
  if (op == "remark") {
    json found = json::array();
    for (const auto& f : search_esep_without_pp(r, a.parallel()))
      found.push_back({{"closure", f.closure},
                       {"ideal", f.ideal},
                       {"rad", f.rad},
                       {"ivi", f.ivi},
                       {"pp", f.pp.holds}});
    rep.info("esep-without-equality", found);
    return rep;
  }
  const auto& fr = r.finite();
  if (op == "variety") {
    auto gens = to_elem_set(r, parse_element_list(r, a.get("ideal")));
    auto v = variety(r, gens);
    rep.info("V", format_points(r, v.points));
    rep.check("generators-agree", v.agree());
    rep.info("I(V)", fr.format_set(vanishing_ideal(r, v.points)));
    return rep;
  }
  if (op != "check") throw PreconditionError("usage", "unknown --op '" + op + "' for nullstellensatz");
  auto fc = FunctionClosure::of(a.closure(r));
  std::vector<ElemSet> ideals;
  if (a.has("ideal"))
    ideals.push_back(parse_ideal(r, a.get("ideal")).set());
  else
    ideals = enumerate_ideals(fr, fr.size());
  rep.info("ideals", ideals.size());
  auto esep = check_esep(fc, ideals, a.parallel());
  rep.check("ESEP", esep.verdict);
  auto pp = check_pp(fc, a.parallel());
  rep.check("PP-closed", pp.closed);
  rep.check("PP-prime", pp.prime);
  if (!esep.verdict || !pp.holds()) {
    rep.info("equality", "not checked", "hypothesis not established");
    return rep;
  }
  rep.check("rad=I(V(I))", check_ans(fc, ideals, a.parallel()).equality);
  return rep;
}

Report cmd_scenario(const Args& a, Report rep) {
  std::string text;
  if (a.has("file")) {
    std::ifstream in(a.get("file"));
    if (!in) throw PreconditionError("usage", "cannot read " + a.get("file"));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    text = std::string(bundled_suite(a.get("suite", "paper-examples")));
  }
  return suite_report(Suite::parse(text), rep.command(), a.parallel());
}

std::string diff_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::vector<std::string> compare(const Report& rep, const json& expected) {
  std::vector<std::string> diff;
  if (expected.is_null()) {
    for (const auto& e : rep.entries())
      if (e.status == "fail") diff.push_back(e.name + ": fail (" + e.detail + ")");
    return diff;
  }
  if (auto it = expected.find("verdicts"); it != expected.end())
    for (const auto& [name, status] : it->items()) {
      auto e = rep.find(name);
      std::string got = e ? e->status : "missing";
      if (got != status.get<std::string>())
        diff.push_back(name + ": expected " + status.get<std::string>() + ", got " + got);
    }
  if (auto it = expected.find("values"); it != expected.end())
    for (const auto& [name, value] : it->items()) {
      auto e = rep.find(name);
      if (!e) {
        diff.push_back(name + ": expected " + diff_value(value) + ", got missing");
      } else if (e->value != value) {
        diff.push_back(name + ": expected " + diff_value(value) + ", got " + diff_value(e->value));
      }
    }
  return diff;
}

}  // namespace

// ------------------------------------------------------------------ public

const std::vector<CommandInfo>& commands() { return command_table(); }
const std::vector<OptionInfo>& global_options() { return kGlobal; }

std::string Invocation::text() const {
  std::string out = command;
  auto append = [&](const OptionInfo& o) {
    auto it = options.find(o.name);
    if (it == options.end()) return;
    for (const auto& v : it->second) {
      out += " --" + o.name;
      if (!o.flag) out += " " + v;
    }
  };
  for (const auto& o : command_info(command).options) append(o);
  return out;
}

Report execute(const Invocation& inv) {
  const auto& info = command_info(inv.command);
  for (const auto& [name, values] : inv.options) {
    bool known = is_global(name) || std::any_of(info.options.begin(), info.options.end(),
                                                [&](const OptionInfo& o) { return o.name == name; });
    if (!known) throw PreconditionError("usage", inv.command + " has no option --" + name);
  }
  Args a{inv};
  Report rep(inv.text());
  const std::string& c = inv.command;
  if (c == "axioms") return cmd_axioms(a, std::move(rep));
  if (c == "spec") return cmd_spec(a, std::move(rep));
  if (c == "vset") return cmd_vset(a, std::move(rep));
  if (c == "dset") return cmd_dset(a, std::move(rep));
  if (c == "is-prime") return cmd_is_prime(a, std::move(rep));
  if (c == "product") return cmd_product(a, std::move(rep));
  if (c == "quotient") return cmd_quotient(a, std::move(rep));
  if (c == "topology") return cmd_topology(a, std::move(rep));
  if (c == "localize") return cmd_localize(a, std::move(rep));
  if (c == "radical") return cmd_radical(a, std::move(rep));
  if (c == "member") return cmd_member(a, std::move(rep));
  if (c == "modules") return cmd_modules(a, std::move(rep));
  if (c == "nullstellensatz") return cmd_nullstellensatz(a, std::move(rep));
  return cmd_scenario(a, std::move(rep));
}

// --------------------------------------------------------------- scenarios

Invocation Scenario::invocation() const {
  Invocation inv{operation, parameters};
  if (!ring.empty()) inv.options["ring"] = {ring};
  if (!closure.empty()) inv.options["closure"] = {closure};
  return inv;
}

json Scenario::to_json() const {
  json j;
  j["name"] = name;
  if (!ring.empty()) j["ring"] = ring;
  if (!closure.empty()) j["closure"] = closure;
  j["operation"] = operation;
  json params = json::object();
  for (const auto& [k, v] : parameters) params[k] = v.size() == 1 ? json(v[0]) : json(v);
  j["parameters"] = params;
  if (!expected.is_null()) j["expected"] = expected;
  return j;
}

Scenario Scenario::from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scenario must be an object", 0);
  auto str = [&](const char* key, bool required) -> std::string {
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) throw ParseError(std::string("scenario is missing \"") + key + "\"", 0);
      return {};
    }
    if (!it->is_string()) throw ParseError(std::string("\"") + key + "\" must be a string", 0);
    return it->get<std::string>();
  };
  Scenario s;
  s.name = str("name", true);
  s.ring = str("ring", false);
  s.closure = str("closure", false);
  s.operation = str("operation", true);
  if (auto it = j.find("parameters"); it != j.end()) {
    if (!it->is_object()) throw ParseError("\"parameters\" must be an object", 0);
    for (const auto& [k, v] : it->items()) {
      if (v.is_string()) {
        s.parameters[k] = {v.get<std::string>()};
      } else if (v.is_boolean() && v.get<bool>()) {
        s.parameters[k] = {"true"};
      } else if (v.is_array() && std::all_of(v.begin(), v.end(),
                                             [](const json& x) { return x.is_string(); })) {
        s.parameters[k] = v.get<std::vector<std::string>>();
      } else {
        throw ParseError("parameter \"" + k + "\" must be a string or list of strings", 0);
      }
    }
  }
  if (auto it = j.find("expected"); it != j.end()) {
    if (!it->is_object()) throw ParseError("\"expected\" must be an object", 0);
    for (const auto& [k, v] : it->items()) {
      if (k != "verdicts" && k != "values")
        throw ParseError("\"expected\" has unknown key \"" + k + "\"", 0);
      if (!v.is_object()) throw ParseError("\"expected." + k + "\" must be an object", 0);
      if (k == "verdicts")
        for (const auto& [n, st] : v.items())
          if (!st.is_string()) throw ParseError("expected verdict for " + n + " must be a string", 0);
    }
    s.expected = *it;
  }
  return s;
}

Suite Suite::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("suite is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("scenarios") || !doc["scenarios"].is_array())
    throw ParseError("suite needs a \"scenarios\" array", 0);
  Suite s;
  if (doc.contains("suite") && doc["suite"].is_string()) s.name = doc["suite"].get<std::string>();
  std::size_t k = 0;
  for (const auto& entry : doc["scenarios"]) {
    try {
      s.scenarios.push_back(Scenario::from_json(entry));
    } catch (const ParseError& e) {
      std::string name = entry.is_object() && entry.contains("name") && entry["name"].is_string()
                             ? entry["name"].get<std::string>()
                             : "#" + std::to_string(k);
      s.errors.emplace_back(name, e.what());
    }
    ++k;
  }
  return s;
}

json Suite::to_json() const {
  json j;
  if (!name.empty()) j["suite"] = name;
  j["scenarios"] = json::array();
  for (const auto& s : scenarios) j["scenarios"].push_back(s.to_json());
  return j;
}

std::vector<ScenarioOutcome> run_suite(const Suite& suite, bool parallel) {
  std::vector<ScenarioOutcome> out(suite.scenarios.size());
  detail::for_each_index(suite.scenarios.size(), parallel, [&](std::uint64_t k) {
    const auto& s = suite.scenarios[k];
    out[k].name = s.name;
    try {
      auto inv = s.invocation();
      if (inv.command == "scenario") throw PreconditionError("usage", "scenarios cannot nest");
      if (!parallel) inv.options["serial"] = {"true"};
      out[k].diff = compare(execute(inv), s.expected);
    } catch (const std::exception& e) {
      out[k].diff = {std::string("error: ") + e.what()};
    }
    out[k].pass = out[k].diff.empty();
  });
  for (const auto& [name, msg] : suite.errors) out.push_back({name, false, {"parse error: " + msg}});
  std::stable_sort(out.begin(), out.end(),
                   [](const ScenarioOutcome& a, const ScenarioOutcome& b) { return a.name < b.name; });
  return out;
}

Report suite_report(const Suite& suite, const std::string& command, bool parallel) {
  Report rep(command);
  auto outcomes = run_suite(suite, parallel);
  if (!suite.name.empty()) rep.info("suite", suite.name);
  rep.info("scenarios", outcomes.size());
  std::size_t passed = 0;
  for (const auto& o : outcomes) {
    std::string diff;
    for (const auto& d : o.diff) diff += (diff.empty() ? "" : "; ") + d;
    rep.check("scenario:" + o.name, o.pass, diff);
    passed += o.pass;
  }
  rep.info("passed", passed);
  return rep;
}

std::string_view bundled_suite(std::string_view name) {
  if (name == "paper-examples") return kPaperExamplesSuite;
  throw PreconditionError("usage", "no bundled suite named '" + std::string(name) + "'");
}

// --------------------------------------------------------------------- run

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ResourceLimit*>(&e)) return 3;
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks closure operators on rings and modules", "approx"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  std::vector<std::pair<CLI::App*, Invocation>> subs;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  for (const auto& c : command_table()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    auto add = [&](const OptionInfo& o) {
      if (o.flag) {
        sub->add_flag("--" + o.name, flags[c.name][o.name], o.help);
      } else {
        auto* opt = sub->add_option("--" + o.name, values[c.name][o.name], o.help);
        if (!o.multi) opt->expected(1);
      }
    };
    for (const auto& o : c.options) add(o);
    for (const auto& o : kGlobal) add(o);
  }
  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }
  const CLI::App* chosen = app.get_subcommands().front();
  Invocation inv{chosen->get_name(), {}};
  for (auto& [name, v] : values[inv.command])
    if (!v.empty()) inv.options[name] = v;
  for (auto& [name, on] : flags[inv.command])
    if (on) inv.options[name] = {"true"};

  std::string format = inv.has("format") ? inv.options["format"].front() : "table";
  if (format != "json" && format != "table") {
    err << "error: --format must be json or table\n";
    return 2;
  }
  try {
    auto t0 = std::chrono::steady_clock::now();
    Report rep = execute(inv);
    if (inv.has("timing"))
      rep.set_timing(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    out << (format == "json" ? rep.json_text() : rep.table_text());
    return rep.failed() ? 1 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace approx::cli
