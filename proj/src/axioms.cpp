#include "approx/axioms.hpp"

#include "approx/errors.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

namespace approx {

// ------------------------------------------------------------------ Carrier

Carrier Carrier::of_ring(const FiniteRing& ring) {
  Carrier c;
  c.size = ring.size();
  c.add.resize(c.size * c.size);
  c.neg.resize(c.size);
  c.zero = ring.zero();
  for (Index a = 0; a < c.size; ++a) {
    c.neg[a] = ring.neg(a);
    c.labels.push_back(ring.label(a));
    for (Index b = 0; b < c.size; ++b) c.add[a * c.size + b] = ring.add(a, b);
  }
  for (Index r = 0; r < c.size; ++r) {
    std::vector<Index> m(c.size);
    for (Index x = 0; x < c.size; ++x) m[x] = ring.mul(r, x);
    c.actions.push_back(std::move(m));
    c.action_labels.push_back(ring.label(r));
  }
  return c;
}

ElemSet Carrier::sumset(const ElemSet& a, const ElemSet& b) const {
  ElemSet out(size);
  auto mb = members(b);
  for (auto x = a.find_first(); x != ElemSet::npos; x = a.find_next(x))
    for (Index y : mb) out.set(plus(static_cast<Index>(x), y));
  return out;
}

ElemSet Carrier::image(std::size_t action, const ElemSet& a) const {
  ElemSet out(size);
  for (auto x = a.find_first(); x != ElemSet::npos; x = a.find_next(x))
    out.set(actions[action][x]);
  return out;
}

ElemSet Carrier::subgroup_closure(const ElemSet& gens) const {
  auto g = members(gens);
  ElemSet out(size);
  out.set(zero);
  std::vector<Index> frontier{zero};
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index x : frontier)
      for (Index y : g) {
        Index z = plus(x, y);
        if (!out.test(z)) {
          out.set(z);
          next.push_back(z);
        }
      }
    frontier.swap(next);
  }
  return out;
}

bool Carrier::is_subgroup(const ElemSet& s) const {
  if (!s.test(zero)) return false;
  auto m = members(s);
  for (Index x : m) {
    if (!s.test(neg[x])) return false;
    for (Index y : m)
      if (!s.test(plus(x, y))) return false;
  }
  return true;
}

bool Carrier::is_stable(const ElemSet& s) const {
  if (!is_subgroup(s)) return false;
  for (std::size_t r = 0; r < actions.size(); ++r)
    if (!image(r, s).is_subset_of(s)) return false;
  return true;
}

ElemSet Carrier::stable_closure(const ElemSet& gens) const {
  ElemSet s = subgroup_closure(gens);
  while (true) {
    ElemSet t = s;
    for (std::size_t r = 0; r < actions.size(); ++r) t |= image(r, s);
    t = subgroup_closure(t);
    if (t == s) return s;
    s = std::move(t);
  }
}

std::vector<ElemSet> enumerate_subgroups(const Carrier& c, std::size_t guard) {
  if (c.size > guard)
    throw ResourceLimit("subgroup enumeration: carrier has " + std::to_string(c.size) +
                        " elements, guard is " + std::to_string(guard));
  std::set<ElemSet> seen;
  ElemSet zero(c.size);
  zero.set(c.zero);
  std::vector<ElemSet> work{zero};
  seen.insert(zero);
  while (!work.empty()) {
    ElemSet h = std::move(work.back());
    work.pop_back();
    for (Index x = 0; x < c.size; ++x) {
      if (h.test(x)) continue;
      ElemSet g = h;
      g.set(x);
      ElemSet s = c.subgroup_closure(g);
      if (seen.insert(s).second) work.push_back(std::move(s));
    }
  }
  return {seen.begin(), seen.end()};
}

std::string Carrier::format(const ElemSet& s) const {
  std::string out = "{";
  bool first = true;
  for (auto x = s.find_first(); x != ElemSet::npos; x = s.find_next(x)) {
    if (!first) out += ", ";
    first = false;
    out += labels[x];
  }
  return out + "}";
}

// ------------------------------------------------------------------- names

std::string axiom_name(Axiom a, bool module_names) {
  const char* p = module_names ? "CM" : "C";
  switch (a) {
    case Axiom::C1:
      return std::string(p) + "1";
    case Axiom::C2:
      return std::string(p) + "2";
    case Axiom::C3:
      return std::string(p) + "3";
    case Axiom::C4a:
      return std::string(p) + "4a";
    case Axiom::C4b:
      return std::string(p) + "4b";
    case Axiom::Absorption:
      return "absorption";
  }
  return "?";
}

std::string AxiomMode::name() const {
  switch (kind) {
    case Exhaustive:
      return "exhaustive";
    case Subgroups:
      return "subgroups";
    case Sampled:
      return "sampled";
  }
  return "?";
}

bool AxiomReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
}

const AxiomVerdict& AxiomReport::get(Axiom a) const {
  for (const auto& v : verdicts)
    if (v.axiom == a) return v;
  throw Error("axiom not in report");
}

namespace {

// ------------------------------------------------------- violation search

template <class Body>
std::optional<Counterexample> first_violation(std::uint64_t n, bool parallel, Body&& body) {
  return detail::first_hit<Counterexample>(n, parallel, std::forward<Body>(body));
}

Index lowest_missing(const ElemSet& lhs, const ElemSet& rhs) {
  ElemSet d = lhs - rhs;
  return static_cast<Index>(d.find_first());
}

// Builds the counterexample text from its sets; shared by every mode.
void describe(const Carrier& c, Counterexample& cx, bool module_names) {
  auto L = [&](Index i) { return c.labels[i]; };
  auto F = [&](const ElemSet& s) { return c.format(s); };
  std::string w = L(cx.witness);
  switch (cx.axiom) {
    case Axiom::C1:
      cx.text = "A = " + F(cx.a) + ": " + w + " is in A but not in cl(A)";
      break;
    case Axiom::C2:
      cx.text = "A = " + F(cx.a) + " ⊆ B = " + F(*cx.b) + ": " + w +
                " is in cl(A) but not in cl(B)";
      break;
    case Axiom::C3:
      cx.text = "A = " + F(cx.a) + ": cl(cl(A)) != cl(A), differing at " + w;
      break;
    case Axiom::C4a:
      cx.text = "A = " + F(cx.a) + ", B = " + F(*cx.b) + ": " + w +
                (cx.minkowski ? " is in {x + y : x in cl(A), y in cl(B)} but not in cl({a + b})"
                              : " is in <cl(A) ∪ cl(B)> but not in cl(<A ∪ B>)");
      break;
    case Axiom::C4b:
      cx.text = "r = " + c.action_labels[*cx.action] + ", A = " + F(cx.a) + ": " + w +
                " is in r·cl(A) but not in cl(rA)";
      break;
    case Axiom::Absorption:
      cx.text = std::string(module_names ? "submodule" : "ideal") + " I = " + F(cx.a) +
                ", r = " + c.action_labels[*cx.action] + ": " + w + " is in rI but not in cl(I)";
      break;
  }
}

// ------------------------------------------------------------ general sets

ElemSet combine(const Carrier& c, const ElemSet& x, const ElemSet& y, bool minkowski) {
  return minkowski ? c.sumset(x, y) : c.subgroup_closure(x | y);
}

// Checks one axiom instance on explicit sets; returns the witness on failure.
std::optional<Index> violates(const Carrier& c, const SetClosure& cl, Axiom ax, const ElemSet& a,
                              const ElemSet* b, std::size_t action, bool minkowski) {
  ElemSet ca = cl(a);
  switch (ax) {
    case Axiom::C1:
      if (!a.is_subset_of(ca)) return lowest_missing(a, ca);
      return std::nullopt;
    case Axiom::C2: {
      ElemSet cb = cl(*b);
      if (!ca.is_subset_of(cb)) return lowest_missing(ca, cb);
      return std::nullopt;
    }
    case Axiom::C3: {
      ElemSet cca = cl(ca);
      if (cca == ca) return std::nullopt;
      return cca.is_subset_of(ca) ? lowest_missing(ca, cca) : lowest_missing(cca, ca);
    }
    case Axiom::C4a: {
      ElemSet lhs = combine(c, ca, cl(*b), minkowski);
      ElemSet rhs = cl(combine(c, a, *b, minkowski));
      if (!lhs.is_subset_of(rhs)) return lowest_missing(lhs, rhs);
      return std::nullopt;
    }
    case Axiom::C4b: {
      ElemSet lhs = c.image(action, ca);
      ElemSet rhs = cl(c.image(action, a));
      if (!lhs.is_subset_of(rhs)) return lowest_missing(lhs, rhs);
      return std::nullopt;
    }
    case Axiom::Absorption: {
      ElemSet lhs = c.image(action, a);
      if (!lhs.is_subset_of(ca)) return lowest_missing(lhs, ca);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> make_cx(const Carrier& c, const SetClosure& cl, Axiom ax,
                                      const ElemSet& a, const ElemSet* b, std::size_t action,
                                      bool module_names, bool minkowski) {
  auto w = violates(c, cl, ax, a, b, action, minkowski);
  if (!w) return std::nullopt;
  Counterexample cx{ax, a, b ? std::optional<ElemSet>(*b) : std::nullopt,
                    (ax == Axiom::C4b || ax == Axiom::Absorption)
                        ? std::optional<std::size_t>(action)
                        : std::nullopt,
                    *w, {}, {}, minkowski, {}};
  describe(c, cx, module_names);
  return cx;
}

ElemSet stable_closure(const Carrier& c, const ElemSet& gens) { return c.stable_closure(gens); }

std::vector<ElemSet> carrier_subgroups(const Carrier& c, std::size_t guard) {
  return enumerate_subgroups(c, guard);
}

// Runs all six axioms over explicit instance lists (subgroup and sampled modes).
struct Instances {
  std::vector<ElemSet> singles;                     // C1, C3
  std::vector<std::pair<ElemSet, ElemSet>> chains;  // C2: first ⊆ second
  std::vector<std::pair<ElemSet, ElemSet>> pairs;   // C4a
  std::vector<std::pair<ElemSet, std::size_t>> scaled;  // C4b
  std::vector<std::pair<ElemSet, std::size_t>> ideals;  // absorption
};

AxiomReport run_instances(const Carrier& c, const SetClosure& cl, const Instances& in,
                          const AxiomMode& mode, const CheckOptions& opt) {
  AxiomReport rep;
  rep.mode = mode;
  const bool mn = opt.module_names;
  const bool mk = opt.sum == SumReading::Minkowski;
  auto single = [&](Axiom ax) {
    AxiomVerdict v{ax, true, in.singles.size(), std::nullopt};
    v.counterexample = first_violation(in.singles.size(), opt.parallel, [&](std::uint64_t i) {
      return make_cx(c, cl, ax, in.singles[i], nullptr, 0, mn, mk);
    });
    v.pass = !v.counterexample;
    return v;
  };
  auto paired = [&](Axiom ax, const std::vector<std::pair<ElemSet, ElemSet>>& ps) {
    AxiomVerdict v{ax, true, ps.size(), std::nullopt};
    v.counterexample = first_violation(ps.size(), opt.parallel, [&](std::uint64_t i) {
      return make_cx(c, cl, ax, ps[i].first, &ps[i].second, 0, mn, mk);
    });
    v.pass = !v.counterexample;
    return v;
  };
  auto acted = [&](Axiom ax, const std::vector<std::pair<ElemSet, std::size_t>>& ps) {
    AxiomVerdict v{ax, true, ps.size(), std::nullopt};
    v.counterexample = first_violation(ps.size(), opt.parallel, [&](std::uint64_t i) {
      return make_cx(c, cl, ax, ps[i].first, nullptr, ps[i].second, mn, mk);
    });
    v.pass = !v.counterexample;
    return v;
  };
  rep.verdicts.push_back(single(Axiom::C1));
  rep.verdicts.push_back(paired(Axiom::C2, in.chains));
  rep.verdicts.push_back(single(Axiom::C3));
  rep.verdicts.push_back(paired(Axiom::C4a, in.pairs));
  rep.verdicts.push_back(acted(Axiom::C4b, in.scaled));
  rep.verdicts.push_back(acted(Axiom::Absorption, in.ideals));
  return rep;
}

AxiomReport check_subgroups(const Carrier& c, const SetClosure& cl, const AxiomMode& mode,
                            const CheckOptions& opt) {
  auto subs = carrier_subgroups(c, opt.subgroup_guard);
  const std::uint64_t n = subs.size();
  if (n * n > opt.pair_cap)
    throw ResourceLimit("subgroup-restricted axiom check needs " + std::to_string(n * n) +
                        " pairs, cap is " + std::to_string(opt.pair_cap));
  Instances in;
  in.singles = subs;
  for (const auto& b : subs)
    for (const auto& a : subs)
      if (a.is_subset_of(b)) in.chains.emplace_back(a, b);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) in.pairs.emplace_back(subs[i], subs[j]);
  for (std::size_t r = 0; r < c.actions.size(); ++r)
    for (const auto& a : subs) {
      in.scaled.emplace_back(a, r);
      if (c.is_stable(a)) in.ideals.emplace_back(a, r);
    }
  auto rep = run_instances(c, cl, in, mode, opt);
  rep.domain_note = "all " + std::to_string(n) + " additive subgroups";
  return rep;
}

AxiomReport check_sampled(const Carrier& c, const SetClosure& cl, const AxiomMode& mode,
                          const CheckOptions& opt) {
  std::mt19937_64 rng(mode.seed);
  const std::uint64_t count = mode.count ? mode.count : kDefaultSampleCount;
  std::vector<ElemSet> samples;
  std::vector<std::size_t> acts;
  std::uniform_int_distribution<std::size_t> pick_action(0, c.actions.size() - 1);
  std::uniform_int_distribution<int> density(1, 4);
  for (std::uint64_t i = 0; i < count; ++i) {
    // Mix sparse and dense subsets; sparse ones exercise small generators.
    ElemSet s(c.size);
    int d = density(rng);
    while (s.none())
      for (Index x = 0; x < c.size; ++x)
        if (static_cast<int>(rng() % 8) < d) s.set(x);
    samples.push_back(std::move(s));
    acts.push_back(pick_action(rng));
  }
  Instances in;
  in.singles = samples;
  for (std::uint64_t i = 0; i < count; ++i) {
    const ElemSet& a = samples[i];
    const ElemSet& b = samples[(i + 1) % count];
    in.chains.emplace_back(a, a | b);
    in.pairs.emplace_back(a, b);
    in.scaled.emplace_back(a, acts[i]);
    in.ideals.emplace_back(stable_closure(c, a), acts[(i + 1) % count]);
  }
  auto rep = run_instances(c, cl, in, mode, opt);
  rep.domain_note = std::to_string(count) + " random nonempty subsets, seed " +
                    std::to_string(mode.seed);
  return rep;
}

// ------------------------------------------------------------- exhaustive

using Mask = std::uint32_t;

struct MaskTables {
  std::size_t n;
  std::vector<Mask> clos;
  std::vector<Mask> sg;                      // sg[A] = subgroup generated by A
  std::vector<std::vector<Mask>> translate;  // translate[x][A] = x + A (Minkowski only)
  std::vector<std::vector<Mask>> act;        // act[r][A] = rA
};

ElemSet to_set(Mask m, std::size_t n) {
  ElemSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (m >> i & 1u) s.set(i);
  return s;
}

Mask to_mask(const ElemSet& s) {
  Mask m = 0;
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) m |= Mask{1} << i;
  return m;
}

Mask mask_sum(const MaskTables& t, Mask a, Mask b) {
  Mask out = 0;
  while (a) {
    int x = std::countr_zero(a);
    out |= t.translate[x][b];
    a &= a - 1;
  }
  return out;
}

Index low_bit(Mask m) { return static_cast<Index>(std::countr_zero(m)); }

MaskTables build_tables(const Carrier& c, const SetClosure& cl, bool parallel, bool minkowski) {
  const std::size_t n = c.size;
  const std::uint64_t total = std::uint64_t{1} << n;
  MaskTables t{n, std::vector<Mask>(total), {}, {}, {}};
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t m = 0; m < count; ++m) t.clos[m] = to_mask(cl(to_set(static_cast<Mask>(m), n)));
  if (minkowski) {
    t.translate.assign(n, std::vector<Mask>(total, 0));
    for (std::size_t x = 0; x < n; ++x)
      for (std::uint64_t m = 1; m < total; ++m) {
        Mask mm = static_cast<Mask>(m);
        int y = std::countr_zero(mm);
        t.translate[x][m] =
            t.translate[x][mm & (mm - 1)] | Mask{1} << c.plus(static_cast<Index>(x), y);
      }
  } else {
    // Subgroup generated by A equals the one generated by the subgroup of
    // A minus its top element, joined with that element; memoise on masks.
    t.sg.assign(total, 0);
    t.sg[0] = Mask{1} << c.zero;
    for (std::uint64_t m = 1; m < total; ++m) {
      Mask mm = static_cast<Mask>(m);
      int top = 31 - std::countl_zero(mm);
      Mask rest = t.sg[mm & ~(Mask{1} << top)];
      if (rest >> top & 1u) {
        t.sg[m] = rest;
        continue;
      }
      Mask s = rest;
      // Close rest ∪ {top} under addition; in a finite group that is enough.
      Mask frontier = Mask{1} << top;
      while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) {
          Index x = low_bit(f);
          for (Mask g = s | (Mask{1} << top); g; g &= g - 1) {
            Index z = c.plus(x, low_bit(g));
            if (!(s >> z & 1u)) {
              s |= Mask{1} << z;
              next |= Mask{1} << z;
            }
          }
        }
        frontier = next;
      }
      t.sg[m] = s;
    }
  }
  t.act.assign(c.actions.size(), std::vector<Mask>(total, 0));
  for (std::size_t r = 0; r < c.actions.size(); ++r)
    for (std::uint64_t m = 1; m < total; ++m) {
      Mask mm = static_cast<Mask>(m);
      int y = std::countr_zero(mm);
      t.act[r][m] = t.act[r][mm & (mm - 1)] | Mask{1} << c.actions[r][y];
    }
  return t;
}

Counterexample mask_cx(const Carrier& c, Axiom ax, Mask a, std::optional<Mask> b,
                       std::optional<std::size_t> r, Index w, bool mn, bool mk = false) {
  Counterexample cx{ax, to_set(a, c.size), b ? std::optional<ElemSet>(to_set(*b, c.size)) : std::nullopt,
                    r, w, {}, {}, mk, {}};
  describe(c, cx, mn);
  return cx;
}

AxiomReport check_exhaustive(const Carrier& c, const SetClosure& cl, const AxiomMode& mode,
                             const CheckOptions& opt) {
  const std::size_t n = c.size;
  if (n > kExhaustiveMaxSize)
    throw ResourceLimit("exhaustive axiom check needs at most " +
                        std::to_string(kExhaustiveMaxSize) + " elements (2^16 subsets); got " +
                        std::to_string(n) + "; use subgroup or sampled mode");
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t c4a_pairs = total * (total + 1) / 2;
  std::uint64_t c2_pairs = 1;
  for (std::size_t i = 0; i < n; ++i) c2_pairs *= 3;
  if (c4a_pairs > opt.pair_cap || c2_pairs > opt.pair_cap)
    throw ResourceLimit("exhaustive axiom check needs " + std::to_string(c4a_pairs) +
                        " subset pairs, cap is " + std::to_string(opt.pair_cap) +
                        "; use subgroup or sampled mode");

  const bool mk = opt.sum == SumReading::Minkowski;
  const MaskTables t = build_tables(c, cl, opt.parallel, mk);
  const bool mn = opt.module_names;
  const bool par = opt.parallel;
  AxiomReport rep;
  rep.mode = mode;
  rep.domain_note = "all " + std::to_string(total) + " subsets";

  {
    AxiomVerdict v{Axiom::C1, true, total, std::nullopt};
    v.counterexample = first_violation(total, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      Mask a = static_cast<Mask>(i);
      Mask miss = a & ~t.clos[a];
      if (!miss) return std::nullopt;
      return mask_cx(c, Axiom::C1, a, std::nullopt, std::nullopt, low_bit(miss), mn);
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    AxiomVerdict v{Axiom::C2, true, c2_pairs, std::nullopt};
    v.counterexample = first_violation(total, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      Mask b = static_cast<Mask>(i);
      Mask cb = t.clos[b];
      // Submasks of b in increasing order, starting from the empty set.
      Mask a = 0;
      do {
        Mask miss = t.clos[a] & ~cb;
        if (miss) return mask_cx(c, Axiom::C2, a, b, std::nullopt, low_bit(miss), mn);
        a = (a - b) & b;
      } while (a != 0);
      return std::nullopt;
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    AxiomVerdict v{Axiom::C3, true, total, std::nullopt};
    v.counterexample = first_violation(total, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      Mask a = static_cast<Mask>(i);
      Mask ca = t.clos[a], cca = t.clos[ca];
      if (ca == cca) return std::nullopt;
      Mask diff = (cca & ~ca) ? (cca & ~ca) : (ca & ~cca);
      return mask_cx(c, Axiom::C3, a, std::nullopt, std::nullopt, low_bit(diff), mn);
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    AxiomVerdict v{Axiom::C4a, true, c4a_pairs, std::nullopt};
    auto plus = [&](Mask x, Mask y) { return mk ? mask_sum(t, x, y) : t.sg[x | y]; };
    v.counterexample = first_violation(total, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      Mask a = static_cast<Mask>(i);
      Mask ca = t.clos[a];
      for (std::uint64_t bb = a; bb < total; ++bb) {
        Mask b = static_cast<Mask>(bb);
        Mask lhs = plus(ca, t.clos[b]);
        Mask rhs = t.clos[plus(a, b)];
        Mask miss = lhs & ~rhs;
        if (miss) return mask_cx(c, Axiom::C4a, a, b, std::nullopt, low_bit(miss), mn, mk);
      }
      return std::nullopt;
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  const std::size_t na = c.actions.size();
  {
    AxiomVerdict v{Axiom::C4b, true, total * na, std::nullopt};
    v.counterexample = first_violation(na, par, [&](std::uint64_t r) -> std::optional<Counterexample> {
      for (std::uint64_t m = 0; m < total; ++m) {
        Mask lhs = t.act[r][t.clos[m]];
        Mask rhs = t.clos[t.act[r][m]];
        Mask miss = lhs & ~rhs;
        if (miss)
          return mask_cx(c, Axiom::C4b, static_cast<Mask>(m), std::nullopt, r, low_bit(miss), mn);
      }
      return std::nullopt;
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    std::vector<Mask> ideals;
    for (std::uint64_t m = 1; m < total; ++m)
      if (c.is_stable(to_set(static_cast<Mask>(m), n))) ideals.push_back(static_cast<Mask>(m));
    AxiomVerdict v{Axiom::Absorption, true, ideals.size() * na, std::nullopt};
    v.counterexample =
        first_violation(ideals.size(), par, [&](std::uint64_t i) -> std::optional<Counterexample> {
          Mask a = ideals[i];
          for (std::size_t r = 0; r < na; ++r) {
            Mask miss = t.act[r][a] & ~t.clos[a];
            if (miss) return mask_cx(c, Axiom::Absorption, a, std::nullopt, r, low_bit(miss), mn);
          }
          return std::nullopt;
        });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

// ------------------------------------------------------------------ Z, Z^k

using Tuple = std::vector<std::uint64_t>;

bool tuple_divides(const Tuple& d, const Tuple& x) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0 ? x[i] != 0 : x[i] % d[i] != 0) return false;
  }
  return true;
}

Tuple tuple_gcd(const Tuple& a, const Tuple& b) {
  Tuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = gcd_u64(a[i], b[i]);
  return out;
}

Principal to_principal(const Tuple& t) {
  Principal p;
  for (auto v : t) p.gens.emplace_back(v);
  return p;
}

std::string fmt_tuple(const Tuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += "x";
    s += "(" + std::to_string(t[i]) + ")";
  }
  return s;
}

std::string fmt_scalar(const std::vector<std::int64_t>& r) {
  if (r.size() == 1) return std::to_string(r[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

// Closure of principal subgroups, through the generic closure code.
struct IntClosure {
  const ClosureSpec& cl;
  Tuple operator()(const Tuple& d) const {
    Principal p = principal_closure(cl, to_principal(d));
    Tuple out;
    for (const auto& g : p.gens) out.push_back(to_u64(g));
    return out;
  }
};

AxiomReport check_integers(const ClosureSpec& cl, const AxiomMode& mode,
                           const IntegerBounds& bounds, const CheckOptions& opt) {
  const std::size_t k = cl.ring().integer_rank();
  IntClosure clo{cl};
  std::vector<Tuple> ds;
  std::vector<std::vector<std::int64_t>> rs;
  AxiomReport rep;
  rep.mode = mode;
  rep.bounded = true;
  std::mt19937_64 rng(mode.seed ? mode.seed : kDefaultSeed);
  if (k == 1) {
    for (std::uint64_t d = 0; d <= bounds.d_max; ++d) ds.push_back({d});
    for (std::int64_t r = -bounds.r_max; r <= bounds.r_max; ++r) rs.push_back({r});
    rep.domain_note = "(d) for d in 0.." + std::to_string(bounds.d_max) + ", r in -" +
                      std::to_string(bounds.r_max) + ".." + std::to_string(bounds.r_max);
  } else {
    const std::uint64_t count = std::min<std::uint64_t>(mode.count ? mode.count : 300, 2000);
    std::uniform_int_distribution<std::uint64_t> coord(0, bounds.tuple_max);
    std::uniform_int_distribution<std::int64_t> scal(-bounds.r_max, bounds.r_max);
    for (std::uint64_t i = 0; i < count; ++i) {
      Tuple t(k);
      for (auto& v : t) v = coord(rng);
      ds.push_back(std::move(t));
    }
    for (int i = 0; i < 60; ++i) {
      std::vector<std::int64_t> r(k);
      for (auto& v : r) v = scal(rng);
      rs.push_back(std::move(r));
    }
    rep.domain_note = std::to_string(count) + " random principal subgroups with generators <= " +
                      std::to_string(bounds.tuple_max) + ", 60 random scalars";
  }
  const std::size_t n = ds.size();
  std::vector<Tuple> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = clo(ds[i]);
  const bool par = opt.parallel;

  auto cx_of = [&](Axiom ax, std::vector<Tuple> sets, std::vector<std::int64_t> r,
                   std::string text) {
    Counterexample cx{ax, ElemSet(), std::nullopt, std::nullopt, 0, {}, {}, false, std::move(text)};
    for (auto& s : sets) cx.principals.push_back(to_principal(s));
    for (auto v : r) cx.scalar.emplace_back(v);
    return cx;
  };

  {
    AxiomVerdict v{Axiom::C1, true, n, std::nullopt};
    v.counterexample = first_violation(n, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      if (tuple_divides(cls[i], ds[i])) return std::nullopt;
      return cx_of(Axiom::C1, {ds[i]}, {}, "A = " + fmt_tuple(ds[i]) + " is not inside cl(A) = " +
                                               fmt_tuple(cls[i]));
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    // A ⊆ B means the generator of B divides the generator of A.
    std::uint64_t dom = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dom += tuple_divides(ds[i], ds[j]);
    AxiomVerdict v{Axiom::C2, true, dom, std::nullopt};
    v.counterexample = first_violation(n, par, [&](std::uint64_t b) -> std::optional<Counterexample> {
      for (std::size_t a = 0; a < n; ++a) {
        if (!tuple_divides(ds[b], ds[a])) continue;
        if (!tuple_divides(cls[b], cls[a]))
          return cx_of(Axiom::C2, {ds[a], ds[b]}, {},
                       "A = " + fmt_tuple(ds[a]) + " ⊆ B = " + fmt_tuple(ds[b]) +
                           " but cl(A) = " + fmt_tuple(cls[a]) + " ⊄ cl(B) = " + fmt_tuple(cls[b]));
      }
      return std::nullopt;
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    AxiomVerdict v{Axiom::C3, true, n, std::nullopt};
    v.counterexample = first_violation(n, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      Tuple cc = clo(cls[i]);
      if (cc == cls[i]) return std::nullopt;
      return cx_of(Axiom::C3, {ds[i]}, {},
                   "A = " + fmt_tuple(ds[i]) + ": cl(A) = " + fmt_tuple(cls[i]) +
                       " but cl(cl(A)) = " + fmt_tuple(cc));
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    AxiomVerdict v{Axiom::C4a, true, n * (n + 1) / 2, std::nullopt};
    v.counterexample = first_violation(n, par, [&](std::uint64_t a) -> std::optional<Counterexample> {
      for (std::size_t b = a; b < n; ++b) {
        Tuple lhs = tuple_gcd(cls[a], cls[b]);
        Tuple rhs = clo(tuple_gcd(ds[a], ds[b]));
        if (!tuple_divides(rhs, lhs))
          return cx_of(Axiom::C4a, {ds[a], ds[b]}, {},
                       "A = " + fmt_tuple(ds[a]) + ", B = " + fmt_tuple(ds[b]) +
                           ": cl(A) + cl(B) = " + fmt_tuple(lhs) + " ⊄ cl(A + B) = " +
                           fmt_tuple(rhs));
      }
      return std::nullopt;
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  auto scale = [](const std::vector<std::int64_t>& r, const Tuple& d) {
    Tuple out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      out[i] = static_cast<std::uint64_t>(r[i] < 0 ? -r[i] : r[i]) * d[i];
    return out;
  };
  {
    AxiomVerdict v{Axiom::C4b, true, n * rs.size(), std::nullopt};
    v.counterexample =
        first_violation(rs.size(), par, [&](std::uint64_t ri) -> std::optional<Counterexample> {
          for (std::size_t i = 0; i < n; ++i) {
            Tuple lhs = scale(rs[ri], cls[i]);
            Tuple rhs = clo(scale(rs[ri], ds[i]));
            if (!tuple_divides(rhs, lhs))
              return cx_of(Axiom::C4b, {ds[i]}, rs[ri],
                           "r = " + fmt_scalar(rs[ri]) + ", A = " + fmt_tuple(ds[i]) +
                               ": r·cl(A) = " + fmt_tuple(lhs) + " ⊄ cl(rA) = " + fmt_tuple(rhs));
          }
          return std::nullopt;
        });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  {
    // Every principal subgroup is an ideal and R·(d) = (d).
    AxiomVerdict v{Axiom::Absorption, true, n, std::nullopt};
    v.counterexample = first_violation(n, par, [&](std::uint64_t i) -> std::optional<Counterexample> {
      if (tuple_divides(cls[i], ds[i])) return std::nullopt;
      return cx_of(Axiom::Absorption, {ds[i]}, {},
                   "I = " + fmt_tuple(ds[i]) + ": R·I ⊄ cl(I) = " + fmt_tuple(cls[i]));
    });
    v.pass = !v.counterexample;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

Tuple tuple_of(const Principal& p) {
  Tuple t;
  for (const auto& g : p.gens) t.push_back(to_u64(g));
  return t;
}

}  // namespace

AxiomReport check_axioms_carrier(const Carrier& c, const SetClosure& cl, const AxiomMode& mode,
                                 const CheckOptions& opt) {
  if (c.size == 0) throw PreconditionError("empty-carrier", "carrier has no elements");
  switch (mode.kind) {
    case AxiomMode::Exhaustive:
      return check_exhaustive(c, cl, mode, opt);
    case AxiomMode::Subgroups:
      return check_subgroups(c, cl, mode, opt);
    case AxiomMode::Sampled:
      return check_sampled(c, cl, mode, opt);
  }
  throw Error("unknown axiom mode");
}

bool replay(const Carrier& c, const SetClosure& cl, const Counterexample& cx) {
  auto w = violates(c, cl, cx.axiom, cx.a, cx.b ? &*cx.b : nullptr, cx.action.value_or(0),
                    cx.minkowski);
  return w.has_value() && *w == cx.witness;
}

bool replay_integer(const ClosureSpec& cl, const Counterexample& cx) {
  IntClosure clo{cl};
  const Tuple a = tuple_of(cx.principals.at(0));
  switch (cx.axiom) {
    case Axiom::C1:
    case Axiom::Absorption:
      return !tuple_divides(clo(a), a);
    case Axiom::C2: {
      const Tuple b = tuple_of(cx.principals.at(1));
      return tuple_divides(b, a) && !tuple_divides(clo(b), clo(a));
    }
    case Axiom::C3:
      return clo(clo(a)) != clo(a);
    case Axiom::C4a: {
      const Tuple b = tuple_of(cx.principals.at(1));
      return !tuple_divides(clo(tuple_gcd(a, b)), tuple_gcd(clo(a), clo(b)));
    }
    case Axiom::C4b: {
      Tuple ra(a.size()), rca(a.size());
      Tuple ca = clo(a);
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto r = to_u64(abs(cx.scalar.at(i)));
        ra[i] = r * a[i];
        rca[i] = r * ca[i];
      }
      return !tuple_divides(clo(ra), rca);
    }
  }
  return false;
}

AxiomReport check_axioms(const ClosureSpec& cl, const AxiomMode& mode,
                         const IntegerBounds& bounds, const CheckOptions& opt) {
  if (!cl.set_valued())
    throw ClosureNotSetValued("closure " + cl.to_string() +
                              " is membership-only; axioms are checked on set-valued closures");
  if (!cl.ring().is_finite()) return check_integers(cl, mode, bounds, opt);
  const auto& fr = cl.ring().finite();
  return check_axioms_carrier(Carrier::of_ring(fr), compile_closure(cl), mode, opt);
}

}  // namespace approx
