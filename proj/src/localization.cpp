#include "approx/localization.hpp"

#include "approx/errors.hpp"
#include "approx/integers.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace approx {

namespace detail {

// What the transferred closure needs, shared by every copy of the closure.
struct LocalData {
  std::shared_ptr<const FiniteRing> base;
  SetClosure cl_r;
  std::vector<Index> s_list;
  std::vector<Index> class_of;
  std::size_t classes = 0;
};

}  // namespace detail

MultSet mult_set(const FiniteRing& r, const std::vector<Index>& generators) {
  MultSet s;
  s.generators = generators;
  s.elements = r.singleton(r.one());
  std::vector<Index> frontier{r.one()};
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index x : frontier)
      for (Index g : generators) {
        Index y = r.mul(x, g);
        if (!s.elements.test(y)) {
          s.elements.set(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return s;
}

namespace {

ElemSet eval_pairs(const detail::LocalData& d, const ElemSet& classes) {
  const auto& r = *d.base;
  const std::size_t ns = d.s_list.size();
  ElemSet out(r.size() * ns);
  for (std::size_t j = 0; j < ns; ++j) {
    ElemSet a_s(r.size());
    for (Index x = 0; x < r.size(); ++x)
      if (classes.test(d.class_of[x * ns + j])) a_s.set(x);
    ElemSet c = d.cl_r(a_s);
    for (Index a = 0; a < r.size(); ++a)
      for (Index u : d.s_list)
        if (c.test(r.mul(u, a))) {
          out.set(a * ns + j);
          break;
        }
  }
  return out;
}

ElemSet eval_classes(const detail::LocalData& d, const ElemSet& classes) {
  ElemSet pairs = eval_pairs(d, classes);
  ElemSet out(d.classes);
  for (auto p = pairs.find_first(); p != ElemSet::npos; p = pairs.find_next(p))
    out.set(d.class_of[p]);
  return out;
}

std::string pair_label(const FiniteRing& r, Index a, Index s) {
  return s == r.one() ? r.label(a) : r.label(a) + "/" + r.label(s);
}

}  // namespace

ApproxRing LocalizedRing::approx() const {
  if (!ring) throw PreconditionError("not-well-defined", well_defined.witness);
  return {ring, cl, name};
}

RingHom LocalizedRing::iota_hom() const {
  if (!ring) throw PreconditionError("not-well-defined", well_defined.witness);
  return RingHom(base.ring, ring, iota);
}

LocalizedRing localize(const ApproxRing& base, const std::vector<Index>& generators, bool parallel) {
  const auto& r = base.r();
  LocalizedRing l;
  l.base = base;
  l.S = mult_set(r, generators);
  l.s_list = l.S.members();
  const std::size_t ns = l.s_list.size();
  const std::size_t np = r.size() * ns;
  if (np > kMaxLocalPairs)
    throw ResourceLimit(std::to_string(np) + " pairs (a, s) exceed the localization cap of " +
                        std::to_string(kMaxLocalPairs));
  std::string gens;
  for (Index g : generators) gens += (gens.empty() ? "" : ",") + r.label(g);
  l.name = "S^-1(" + base.name + "), S = <" + gens + ">";

  auto pa = [&](std::size_t p) { return static_cast<Index>(p / ns); };
  auto ps = [&](std::size_t p) { return l.s_list[p % ns]; };

  // Relation matrix: (a,s) ~ (b,t) iff u(at - bs) ∈ cl(0) for some u ∈ S.
  const ElemSet c0 = base.cl(r.singleton(r.zero()));
  std::vector<ElemSet> rel(np, ElemSet(np));
  detail::for_each_index(np, parallel, [&](std::uint64_t p) {
    for (std::size_t q = 0; q < np; ++q) {
      Index diff = r.sub(r.mul(pa(p), ps(q)), r.mul(pa(q), ps(p)));
      for (Index u : l.s_list)
        if (c0.test(r.mul(u, diff))) {
          rel[p].set(q);
          break;
        }
    }
  });

  auto label = [&](std::size_t p) { return "(" + r.label(pa(p)) + ", " + r.label(ps(p)) + ")"; };
  l.equivalence = Verdict::ok();
  for (std::size_t p = 0; p < np && l.equivalence.holds; ++p) {
    if (!rel[p].test(p)) {
      l.equivalence = Verdict::fail("not reflexive at " + label(p));
      break;
    }
    for (std::size_t q = 0; q < np; ++q)
      if (rel[p].test(q) != rel[q].test(p)) {
        l.equivalence = Verdict::fail("not symmetric: " + label(p) + ", " + label(q));
        break;
      }
  }

  // Classes are the connected components; ~ is transitive iff each is a clique.
  std::vector<Index> comp(np, static_cast<Index>(-1));
  Index ncomp = 0;
  for (std::size_t p = 0; p < np; ++p) {
    if (comp[p] != static_cast<Index>(-1)) continue;
    std::vector<std::size_t> stack{p};
    comp[p] = ncomp;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y = rel[x].find_first(); y != ElemSet::npos; y = rel[x].find_next(y))
        if (comp[y] == static_cast<Index>(-1)) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
    }
    ++ncomp;
  }
  if (l.equivalence.holds) {
    for (std::size_t p = 0; p < np && l.equivalence.holds; ++p)
      for (auto k = rel[p].find_first(); k != ElemSet::npos && l.equivalence.holds;
           k = rel[p].find_next(k)) {
        ElemSet gap = rel[k] - rel[p];
        if (gap.any()) {
          auto q = gap.find_first();
          l.equivalence = Verdict::fail("not transitive: " + label(p) + " ~ " + label(k) + " ~ " +
                                        label(q) + " but " + label(p) + " !~ " + label(q));
        }
      }
  }

  l.class_of.assign(np, 0);
  for (std::size_t p = 0; p < np; ++p) l.class_of[p] = comp[p];
  for (std::size_t p = 0; p < np; ++p)
    if (l.reps.size() == comp[p]) l.reps.emplace_back(pa(p), ps(p));
  const std::size_t k = l.reps.size();

  // Induced operations on all representative pairs.
  std::vector<std::vector<std::size_t>> members_of(k);
  for (std::size_t p = 0; p < np; ++p) members_of[comp[p]].push_back(p);
  std::vector<Index> add(k * k), mul(k * k);
  std::vector<std::string> bad(k * k);
  auto find_pair = [&](Index a, Index s) {
    auto it = std::find(l.s_list.begin(), l.s_list.end(), s);
    return static_cast<std::size_t>(a) * ns + static_cast<std::size_t>(it - l.s_list.begin());
  };
  detail::for_each_index(k * k, parallel, [&](std::uint64_t idx) {
    const std::size_t c1 = idx / k, c2 = idx % k;
    std::optional<Index> sum, prod;
    for (auto p : members_of[c1])
      for (auto q : members_of[c2]) {
        Index st = r.mul(ps(p), ps(q));
        Index s_cls = comp[find_pair(r.add(r.mul(pa(p), ps(q)), r.mul(pa(q), ps(p))), st)];
        Index p_cls = comp[find_pair(r.mul(pa(p), pa(q)), st)];
        if (!sum) sum = s_cls, prod = p_cls;
        if (*sum != s_cls || *prod != p_cls) {
          if (bad[idx].empty())
            bad[idx] = (*sum != s_cls ? "sum" : "product") + std::string(" of classes of ") +
                       label(members_of[c1][0]) + " and " + label(members_of[c2][0]) +
                       " depends on representatives: " + label(p) + ", " + label(q);
        }
      }
    add[idx] = *sum;
    mul[idx] = *prod;
  });
  l.well_defined = Verdict::ok();
  for (const auto& b : bad)
    if (!b.empty()) {
      l.well_defined = Verdict::fail(b);
      break;
    }

  auto data = std::make_shared<detail::LocalData>();
  data->base = base.ring;
  data->cl_r = base.cl;
  data->s_list = l.s_list;
  data->class_of = l.class_of;
  data->classes = k;
  l.data = data;
  l.cl = [data](const ElemSet& a) { return eval_classes(*data, a); };

  Index one_j = static_cast<Index>(std::find(l.s_list.begin(), l.s_list.end(), r.one()) -
                                   l.s_list.begin());
  l.iota.resize(r.size());
  for (Index x = 0; x < r.size(); ++x) l.iota[x] = comp[x * ns + one_j];

  if (l.equivalence.holds && l.well_defined.holds) {
    std::vector<std::string> labels;
    for (auto [a, s] : l.reps) labels.push_back(pair_label(r, a, s));
    auto fr = std::make_shared<FiniteRing>(k, std::move(add), std::move(mul),
                                           l.iota[r.zero()], l.iota[r.one()], std::move(labels));
    l.ring_axioms_violation = find_ring_axiom_violation(*fr);
    l.ring = std::move(fr);
  }
  return l;
}

LocalizedRing localize(const ClosureSpec& cl, const std::vector<RingElem>& generators,
                       bool parallel) {
  if (cl.ring().is_finite()) {
    std::vector<Index> gens;
    for (const auto& g : generators) gens.push_back(static_cast<Index>(g.index()));
    return localize(ApproxRing::of(cl), gens, parallel);
  }
  const std::uint64_t m = z_modulus(cl);
  if (m == 0)
    throw Unsupported("localizing Z needs a shift by mZ with m > 0; the classical case is infinite");
  auto zm = Ring::residue(m);
  auto model = ClosureSpec::parse(zm, cl.is<SetShift>() ? "setshift:J=0" : "gen");
  std::vector<Index> gens;
  for (const auto& g : generators)
    gens.push_back(static_cast<Index>(to_u64(mod_floor(g.integer(), BigInt(m)))));
  auto base = ApproxRing::of(model);
  base.name = "Z with " + cl.to_string() + " (residues mod " + std::to_string(m) + ")";
  auto l = localize(base, gens, parallel);
  l.z_model = m;
  std::string g;
  for (const auto& e : generators) g += (g.empty() ? "" : ",") + e.to_string();
  l.name = "S^-1(" + base.name + "), S = <" + g + ">";
  return l;
}

ElemSet transferred_pairs(const LocalizedRing& l, const ElemSet& classes) {
  return eval_pairs(*l.data, classes);
}

RepIndependence check_rep_independence(const LocalizedRing& l, const AxiomMode& mode,
                                       bool parallel) {
  if (!l.ring) throw PreconditionError("not-well-defined", l.well_defined.witness);
  auto dom = mode_domain(*l.ring, mode);
  RepIndependence out;
  out.sets = dom.size();
  auto hit = detail::first_hit<std::string>(
      dom.size(), parallel, [&](std::uint64_t i) -> std::optional<std::string> {
        ElemSet pairs = transferred_pairs(l, dom[i]);
        std::vector<int> state(l.size(), -1);
        for (std::size_t p = 0; p < l.pairs(); ++p) {
          int in = pairs.test(p);
          int& st = state[l.class_of[p]];
          if (st == -1) {
            st = in;
          } else if (st != in) {
            const auto& r = l.base.r();
            auto rep = l.reps[l.class_of[p]];
            return "A = " + l.ring->format_set(dom[i]) + ": " +
                   pair_label(r, rep.first, rep.second) + " and " +
                   pair_label(r, static_cast<Index>(p / l.s_list.size()),
                              l.s_list[p % l.s_list.size()]) +
                   " name the same class but only one satisfies (*)";
          }
        }
        return std::nullopt;
      });
  out.verdict = hit ? Verdict::fail(*hit) : Verdict::ok();
  return out;
}

AxiomReport check_transfer_axioms(const LocalizedRing& l, const AxiomMode& mode,
                                  const CheckOptions& opt) {
  auto ar = l.approx();
  return check_axioms_carrier(Carrier::of_ring(ar.r()), ar.cl, mode, opt);
}

IotaCheck check_iota_functorial(const LocalizedRing& l, const AxiomMode& mode_r,
                                const AxiomMode& mode_s) {
  auto f = l.iota_hom();
  IotaCheck out;
  out.image_morphic = is_image_morphic(f, l.base.cl, l.cl, mode_r);
  out.preimage_continuous = is_preimage_continuous(f, l.base.cl, l.cl, mode_s);
  return out;
}

namespace {

std::optional<Verdict> prime_verdict(const ApproxRing& ar, const ElemSet& p) {
  try {
    return is_approx_prime(ar, p);
  } catch (const PreconditionError& e) {
    return Verdict::fail(e.what());
  }
}

}  // namespace

Extension extend(const LocalizedRing& l, const ElemSet& p) {
  const std::size_t ns = l.s_list.size();
  Extension e;
  e.ideal = ElemSet(l.size());
  for (Index a : members(p))
    for (std::size_t j = 0; j < ns; ++j) e.ideal.set(l.class_of[a * ns + j]);
  e.meets_s = p.intersects(l.S.elements);
  e.proper = !e.ideal.all();
  if (!e.meets_s) e.prime = prime_verdict(l.approx(), e.ideal);
  return e;
}

Contraction contract(const LocalizedRing& l, const ElemSet& p) {
  Contraction c;
  c.ideal = ElemSet(l.base.r().size());
  for (Index x = 0; x < l.base.r().size(); ++x)
    if (p.test(l.iota[x])) c.ideal.set(x);
  auto pv = prime_verdict(l.approx(), p);
  if (pv && pv->holds) c.prime = prime_verdict(l.base, c.ideal);
  return c;
}

std::string format_base_ideal(const LocalizedRing& l, const ElemSet& s) {
  const auto& r = l.base.r();
  if (l.z_model && r.is_subgroup(s)) {
    std::uint64_t g = *l.z_model;
    for (Index x : members(s)) g = gcd_u64(g, x);
    return "(" + std::to_string(g) + ")";
  }
  return r.format_set(s);
}

Bijection check_ext_contr_bijection(const LocalizedRing& l) {
  auto loc = l.approx();
  auto spec_r = spectrum(l.base);
  auto spec_s = spectrum(loc);
  Bijection b;
  b.base_primes = spec_r.size();
  b.local_primes = spec_s.size();
  std::vector<ElemSet> avoid, images;
  auto fail = [&](std::string w) {
    if (b.verdict.holds) b.verdict = Verdict::fail(std::move(w));
  };
  for (const auto& pv : spec_r.primes) {
    const auto& p = std::get<ElemSet>(pv);
    if (p.intersects(l.S.elements)) continue;
    avoid.push_back(p);
    auto e = extend(l, p);
    images.push_back(e.ideal);
    b.pairs.emplace_back(format_base_ideal(l, p), loc.r().format_set(e.ideal));
    if (!spec_s.find(e.ideal))
      fail(format_base_ideal(l, p) + " extends to " + loc.r().format_set(e.ideal) +
           ", which is not an approximate prime of S^-1 R");
    if (contract(l, e.ideal).ideal != p)
      fail("(P^e)^c != P for P = " + format_base_ideal(l, p));
  }
  b.avoiding = avoid.size();
  for (const auto& qv : spec_s.primes) {
    const auto& q = std::get<ElemSet>(qv);
    auto c = contract(l, q);
    if (!spec_r.find(c.ideal) || c.ideal.intersects(l.S.elements))
      fail("contraction of " + loc.r().format_set(q) + " is " + format_base_ideal(l, c.ideal) +
           ", not a prime avoiding S");
    if (extend(l, c.ideal).ideal != q) fail("(p^c)^e != p for p = " + loc.r().format_set(q));
  }
  for (std::size_t i = 0; i < avoid.size(); ++i)
    for (std::size_t j = 0; j < avoid.size(); ++j)
      if (avoid[i].is_subset_of(avoid[j]) != images[i].is_subset_of(images[j]))
        fail("inclusion between " + format_base_ideal(l, avoid[i]) + " and " +
             format_base_ideal(l, avoid[j]) + " is not preserved");
  if (b.avoiding != b.local_primes && b.verdict.holds)
    fail(std::to_string(b.avoiding) + " primes avoid S but S^-1 R has " +
         std::to_string(b.local_primes));
  return b;
}

// ---------------------------------------------------------------- radicals

RadicalResult radical(const ApproxRing& ar, const ElemSet& i) {
  const auto& r = ar.r();
  const ElemSet c = ar.cl(i);
  RadicalResult out;
  out.radical = ElemSet(r.size());
  for (Index g = 0; g < r.size(); ++g) {
    // g, g^2, ... is eventually periodic; stop at the first repeat.
    ElemSet seen(r.size());
    Index x = g;
    for (std::uint64_t n = 1; !seen.test(x); ++n) {
      if (c.test(x)) {
        out.radical.set(g);
        out.max_exponent = std::max(out.max_exponent, n);
        break;
      }
      seen.set(x);
      x = r.mul(x, g);
    }
  }
  out.within_bound = out.max_exponent <= r.size();
  return out;
}

ElemSet prime_radical(const ApproxRing& ar, const Spectrum& sp) {
  ElemSet out = ar.r().full_set();
  for (const auto& p : sp.primes) out &= std::get<ElemSet>(p);
  return out;
}

namespace {

RadNil rad_nil(const ApproxRing& ar, const std::function<std::string(const ElemSet&)>& fmt) {
  auto rad = radical(ar, ar.r().singleton(ar.r().zero()));
  auto prim = prime_radical(ar, spectrum(ar));
  return {rad.radical == prim, fmt(rad.radical), fmt(prim)};
}

}  // namespace

RadNil check_rad_eq_nil(const ApproxRing& ar) {
  return rad_nil(ar, [&](const ElemSet& s) { return ar.r().format_set(s); });
}

RadNil check_rad_eq_nil(const LocalizedRing& l) {
  auto ar = l.approx();
  return rad_nil(ar, [&](const ElemSet& s) { return ar.r().format_set(s); });
}

std::uint64_t z_radical(const ClosureSpec& cl, std::uint64_t d) {
  const std::uint64_t c = gcd_u64(d, z_modulus(cl));
  return c == 0 ? 0 : to_u64(radical(BigInt(c)));
}

std::uint64_t z_prime_radical(const Spectrum& sp) {
  BigInt l = 1;
  for (const auto& p : sp.primes) {
    auto g = std::get<std::uint64_t>(p);
    if (g == 0) return 0;
    l = lcm(l, BigInt(g));
  }
  return to_u64(l);
}

RadNil z_check_rad_eq_nil(const ClosureSpec& cl) {
  auto rad = z_radical(cl, 0);
  auto prim = z_prime_radical(spectrum(cl));
  return {rad == prim, "(" + std::to_string(rad) + ")", "(" + std::to_string(prim) + ")"};
}

}  // namespace approx
