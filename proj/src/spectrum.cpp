#include "approx/spectrum.hpp"

#include "approx/errors.hpp"
#include "approx/integers.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <random>

namespace approx {

namespace detail {

// The ideal lattice a spectrum lives in. Finite rings work on element sets,
// Z on generators of principal subgroups.
struct SpectrumOps {
  virtual ~SpectrumOps() = default;
  virtual IdealValue closure(const IdealValue& a) const = 0;
  virtual bool subset(const IdealValue& a, const IdealValue& b) const = 0;
  virtual IdealValue sum(const IdealValue& a, const IdealValue& b) const = 0;
  virtual IdealValue product(const IdealValue& a, const IdealValue& b) const = 0;
  virtual IdealValue principal(std::uint64_t f) const = 0;
  virtual IdealValue zero() const = 0;
  virtual IdealValue whole() const = 0;
  virtual std::uint64_t elements() const = 0;  // f ranges over 0..elements-1
  virtual std::vector<IdealValue> subgroups() const = 0;
  virtual std::vector<IdealValue> approx_ideals() const = 0;
  virtual std::string format(const IdealValue& a) const = 0;
  virtual bool finite() const = 0;
};

}  // namespace detail

namespace {

const ElemSet& as_set(const IdealValue& v) { return std::get<ElemSet>(v); }
std::uint64_t as_gen(const IdealValue& v) { return std::get<std::uint64_t>(v); }

class FiniteOps final : public detail::SpectrumOps {
 public:
  FiniteOps(ApproxRing ar, std::vector<ElemSet> subgroups, std::vector<ElemSet> ideals)
      : ar_(std::move(ar)), subgroups_(std::move(subgroups)), ideals_(std::move(ideals)) {}

  IdealValue closure(const IdealValue& a) const override { return ar_.cl(as_set(a)); }
  bool subset(const IdealValue& a, const IdealValue& b) const override {
    return as_set(a).is_subset_of(as_set(b));
  }
  IdealValue sum(const IdealValue& a, const IdealValue& b) const override {
    return ar_.r().subgroup_closure(as_set(a) | as_set(b));
  }
  IdealValue product(const IdealValue& a, const IdealValue& b) const override {
    return approx_product(ar_, as_set(a), as_set(b));
  }
  IdealValue principal(std::uint64_t f) const override {
    return ar_.r().ideal_closure(ar_.r().singleton(static_cast<Index>(f)));
  }
  IdealValue zero() const override { return ar_.r().singleton(ar_.r().zero()); }
  IdealValue whole() const override { return ar_.r().full_set(); }
  std::uint64_t elements() const override { return ar_.r().size(); }
  std::vector<IdealValue> subgroups() const override {
    return {subgroups_.begin(), subgroups_.end()};
  }
  std::vector<IdealValue> approx_ideals() const override { return {ideals_.begin(), ideals_.end()}; }
  std::string format(const IdealValue& a) const override { return ar_.r().format_set(as_set(a)); }
  bool finite() const override { return true; }

 private:
  ApproxRing ar_;
  std::vector<ElemSet> subgroups_, ideals_;
};

// (a) ⊆ (b) in Z.
bool z_divides_ideal(std::uint64_t a, std::uint64_t b) { return b == 0 ? a == 0 : a % b == 0; }

class IntegerOps final : public detail::SpectrumOps {
 public:
  IntegerOps(std::uint64_t m, std::uint64_t family_max, std::uint64_t elements)
      : m_(m), family_max_(family_max), elements_(elements) {}

  IdealValue closure(const IdealValue& a) const override { return gcd_u64(as_gen(a), m_); }
  bool subset(const IdealValue& a, const IdealValue& b) const override {
    return z_divides_ideal(as_gen(a), as_gen(b));
  }
  IdealValue sum(const IdealValue& a, const IdealValue& b) const override {
    return gcd_u64(as_gen(a), as_gen(b));
  }
  IdealValue product(const IdealValue& a, const IdealValue& b) const override {
    return to_u64(gcd(BigInt(as_gen(a)) * as_gen(b), BigInt(m_)));
  }
  IdealValue principal(std::uint64_t f) const override { return f; }
  IdealValue zero() const override { return std::uint64_t{0}; }
  IdealValue whole() const override { return std::uint64_t{1}; }
  std::uint64_t elements() const override { return elements_; }
  std::vector<IdealValue> subgroups() const override {
    std::vector<IdealValue> out;
    for (std::uint64_t d = 0; d <= family_max_; ++d) out.emplace_back(d);
    return out;
  }
  std::vector<IdealValue> approx_ideals() const override { return subgroups(); }
  std::string format(const IdealValue& a) const override {
    return "(" + std::to_string(as_gen(a)) + ")";
  }
  bool finite() const override { return false; }

 private:
  std::uint64_t m_, family_max_, elements_;
};

void finish(Spectrum& sp) {
  sp.labels.clear();
  sp.closures.clear();
  for (const auto& p : sp.primes) {
    sp.labels.push_back(sp.ops->format(p));
    sp.closures.push_back(sp.ops->closure(p));
  }
}

bool set_less(const ElemSet& a, const ElemSet& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  return members(a) < members(b);
}

}  // namespace

std::optional<std::size_t> Spectrum::find(const IdealValue& p) const {
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (primes[i] == p) return i;
  return std::nullopt;
}

Spectrum spectrum(const ApproxRing& ar, const SpectrumOptions& opt) {
  auto subs = enumerate_subgroups(ar.r(), opt.guard);
  std::vector<char> ideal(subs.size(), 0), prime(subs.size(), 0);
  detail::for_each_index(subs.size(), opt.parallel, [&](std::uint64_t i) {
    const auto& s = subs[i];
    if (!is_approx_ideal(ar, s)) return;
    ideal[i] = 1;
    if (s.all()) return;
    try {
      prime[i] = is_approx_prime(ar, s, false).holds;
    } catch (const PreconditionError&) {
    }
  });
  Spectrum sp;
  sp.name = ar.name;
  sp.method = Spectrum::Method::Exhaustive;
  sp.candidates = subs.size();
  sp.domain_note = "all " + std::to_string(subs.size()) + " additive subgroups";
  std::vector<ElemSet> ideals, primes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (ideal[i]) ideals.push_back(subs[i]);
    if (prime[i]) primes.push_back(subs[i]);
  }
  std::sort(primes.begin(), primes.end(), set_less);
  sp.primes.assign(primes.begin(), primes.end());
  sp.ops = std::make_shared<FiniteOps>(ar, std::move(subs), std::move(ideals));
  finish(sp);
  return sp;
}

Spectrum spectrum(const ClosureSpec& cl, const SpectrumOptions& opt) {
  if (cl.ring().is_finite()) return spectrum(ApproxRing::of(cl), opt);
  const std::uint64_t m = z_modulus(cl);
  const std::uint64_t bound = opt.bound ? opt.bound : std::max<std::uint64_t>(1000, m);
  Spectrum sp;
  sp.name = cl.ring().to_string() + " with " + cl.to_string();
  sp.bound = bound;
  sp.candidates = bound;  // 0..bound without 1
  const std::uint64_t family_max = std::min<std::uint64_t>(bound, std::max<std::uint64_t>(60, 2 * m));
  sp.ops = std::make_shared<IntegerOps>(m, family_max, bound + 1);

  // Brute force on every generator in range, compared with the closed form.
  const std::uint64_t brute_max = m ? bound : std::min<std::uint64_t>(bound, 200);
  auto miss = detail::first_hit<std::string>(
      brute_max + 1, opt.parallel, [&](std::uint64_t d) -> std::optional<std::string> {
        if (d == 1) return std::nullopt;
        bool closed = z_is_approx_prime_closed(cl, d).holds;
        bool brute = z_is_approx_prime_brute(cl, d, 0, false).holds;
        if (closed == brute) return std::nullopt;
        return "(" + std::to_string(d) + "): closed form says " + (closed ? "prime" : "not prime") +
               ", brute force says " + (brute ? "prime" : "not prime");
      });
  sp.cross_check = miss ? Verdict::fail(*miss) : Verdict::ok();

  if (m) {
    sp.method = Spectrum::Method::ClosedForm;
    for (const auto& p : prime_factors(BigInt(m))) sp.primes.emplace_back(to_u64(p));
    sp.domain_note = "closed form {(p) : p | " + std::to_string(m) + "}, brute force on d <= " +
                     std::to_string(brute_max);
  } else {
    sp.method = Spectrum::Method::Bounded;
    sp.primes.emplace_back(std::uint64_t{0});
    for (std::uint64_t d = 2; d <= bound; ++d)
      if (is_prime(d)) sp.primes.emplace_back(d);
    sp.domain_note = "bounded search: generators 0.." + std::to_string(bound) +
                     ", brute force on d <= " + std::to_string(brute_max);
  }
  finish(sp);
  return sp;
}

IdealValue ideal_value(const Subset& s) {
  if (s.is_set()) return s.set();
  const auto& p = s.principal();
  if (p.gens.size() != 1)
    throw Unsupported("spectra on Z^k are not implemented; use Z or a finite ring");
  return to_u64(abs(p.gens[0]));
}

std::string format_ideal(const Spectrum& sp, const IdealValue& i) { return sp.ops->format(i); }

namespace {

boost::dynamic_bitset<> v_bits(const Spectrum& sp, const IdealValue& i) {
  boost::dynamic_bitset<> out(sp.size());
  IdealValue c = sp.ops->closure(i);
  for (std::size_t k = 0; k < sp.size(); ++k)
    if (sp.ops->subset(c, sp.closures[k])) out.set(k);
  return out;
}

std::vector<std::size_t> indices(const boost::dynamic_bitset<>& b) {
  std::vector<std::size_t> out;
  for (auto k = b.find_first(); k != boost::dynamic_bitset<>::npos; k = b.find_next(k))
    out.push_back(k);
  return out;
}

std::string format_points(const Spectrum& sp, const boost::dynamic_bitset<>& b) {
  std::string out = "{";
  for (auto k : indices(b)) out += (out.size() > 1 ? ", " : "") + sp.labels[k];
  return out + "}";
}

}  // namespace

std::vector<std::size_t> v_set(const Spectrum& sp, const IdealValue& i) {
  return indices(v_bits(sp, i));
}

std::vector<std::size_t> d_set(const Spectrum& sp, std::uint64_t f) {
  auto v = v_bits(sp, sp.ops->principal(f));
  v.flip();
  return indices(v);
}

std::vector<std::size_t> d_set(const Spectrum& sp, const RingElem& f) {
  if (f.ring().is_finite()) return d_set(sp, f.index());
  return d_set(sp, to_u64(abs(f.integer())));
}

std::vector<std::size_t> closure_of_point(const Spectrum& sp, const IdealValue& p) {
  if (!sp.find(p))
    throw PreconditionError("not-in-spectrum", sp.ops->format(p) + " is not an approximate prime");
  return v_set(sp, p);
}

TopologyReport topology_check(const Spectrum& sp, std::uint64_t seed) {
  using Bits = boost::dynamic_bitset<>;
  const auto& ops = *sp.ops;
  const std::size_t n = sp.size();
  TopologyReport rep;

  Bits all(n);
  all.set();
  if (v_bits(sp, ops.zero()) != all)
    rep.whole_and_empty = Verdict::fail("V((0)) = " + format_points(sp, v_bits(sp, ops.zero())));
  else if (v_bits(sp, ops.whole()).any())
    rep.whole_and_empty = Verdict::fail("V(R) = " + format_points(sp, v_bits(sp, ops.whole())));

  auto subs = ops.subgroups();
  auto ideals = ops.approx_ideals();
  rep.ideals = ideals.size();
  std::vector<Bits> vs(subs.size()), vi(ideals.size());
  for (std::size_t i = 0; i < subs.size(); ++i) vs[i] = v_bits(sp, subs[i]);
  for (std::size_t i = 0; i < ideals.size(); ++i) vi[i] = v_bits(sp, ideals[i]);

  auto pair_scan = [&](const std::vector<IdealValue>& fam, const std::vector<Bits>& v, bool union_law) {
    const std::uint64_t k = fam.size();
    auto hit = detail::first_hit<std::string>(k * k, true, [&](std::uint64_t idx) -> std::optional<std::string> {
      std::uint64_t a = idx / k, b = idx % k;
      if (b < a) return std::nullopt;
      Bits lhs = union_law ? (v[a] | v[b]) : (v[a] & v[b]);
      IdealValue comb = union_law ? ops.product(fam[a], fam[b]) : ops.sum(fam[a], fam[b]);
      Bits rhs = v_bits(sp, comb);
      if (lhs == rhs) return std::nullopt;
      return "I = " + ops.format(fam[a]) + ", J = " + ops.format(fam[b]) + ": " +
             format_points(sp, lhs) + " vs V(" + (union_law ? "IJ" : "I + J") + ") = " +
             format_points(sp, rhs);
    });
    return hit ? Verdict::fail(*hit) : Verdict::ok();
  };
  rep.intersection_law = pair_scan(subs, vs, false);
  rep.union_law = pair_scan(ideals, vi, true);

  // D(f) for every f in the element domain.
  const std::uint64_t fcount = ops.elements();
  std::vector<Bits> dsets(fcount);
  detail::for_each_index(fcount, true, [&](std::uint64_t f) {
    dsets[f] = v_bits(sp, ops.principal(f));
    dsets[f].flip();
  });

  rep.t0 = Verdict::ok();
  for (std::size_t a = 0; a < n && rep.t0.holds; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool separated = false;
      for (std::uint64_t f = 0; f < fcount && !separated; ++f)
        separated = dsets[f].test(a) != dsets[f].test(b);
      if (!separated) {
        rep.t0 = Verdict::fail("no D(f) separates " + sp.labels[a] + " and " + sp.labels[b]);
        break;
      }
    }

  rep.t1_closed_points = true;
  for (std::size_t a = 0; a < n && rep.t1_closed_points; ++a) {
    Bits c = v_bits(sp, sp.primes[a]);
    if (c.count() != 1) {
      rep.t1_closed_points = false;
      rep.t1_witness = "closure of {" + sp.labels[a] + "} is " + format_points(sp, c);
    }
  }
  rep.t1_maximal = true;
  for (std::size_t a = 0; a < n && rep.t1_maximal; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && ops.subset(sp.primes[a], sp.primes[b])) {
        rep.t1_maximal = false;
        std::string w = sp.labels[a] + " is strictly inside " + sp.labels[b];
        rep.t1_witness = rep.t1_witness.empty() ? w : rep.t1_witness + "; " + w;
        break;
      }
  rep.discrete = rep.t1_closed_points;

  // Quasi-compactness: the full family of basic opens and seeded random
  // subfamilies that cover; each is reduced greedily and the reduction is
  // confirmed through V(cl(sum of <f_i>)) = ∅.
  std::vector<std::vector<std::uint64_t>> covers;
  std::vector<std::uint64_t> everything(fcount);
  for (std::uint64_t f = 0; f < fcount; ++f) everything[f] = f;
  covers.push_back(everything);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 32; ++t) {
    std::vector<std::uint64_t> fam;
    for (std::uint64_t f = 0; f < fcount; ++f)
      if (rng() % 3 == 0) fam.push_back(f);
    covers.push_back(std::move(fam));
  }
  rep.quasi_compact = Verdict::ok();
  for (std::size_t c = 0; c < covers.size() && rep.quasi_compact.holds; ++c) {
    Bits u(n);
    for (auto f : covers[c]) u |= dsets[f];
    if (u != all) continue;  // not a cover
    Bits got(n);
    IdealValue acc = ops.zero();
    std::size_t used = 0;
    for (auto f : covers[c]) {
      if (got == all) break;
      if ((dsets[f] - got).none()) continue;
      got |= dsets[f];
      acc = ops.sum(acc, ops.principal(f));
      ++used;
    }
    if (got != all || v_bits(sp, acc).any())
      rep.quasi_compact = Verdict::fail("greedy subcover of cover #" + std::to_string(c) +
                                        " leaves V(cl(sum)) = " + format_points(sp, v_bits(sp, acc)));
    if (c == 0) rep.subcover_size = used;
  }

  rep.primes_closed = Verdict::ok();
  for (std::size_t a = 0; a < n; ++a)
    if (sp.closures[a] != sp.primes[a]) {
      rep.primes_closed = Verdict::fail("cl(" + sp.labels[a] + ") = " + ops.format(sp.closures[a]));
      break;
    }
  rep.closed_ideals_under_primes = Verdict::ok();
  for (const auto& i : ideals) {
    if (ops.closure(i) != i || i == ops.whole() || ops.subset(ops.whole(), i)) continue;
    bool under = false;
    for (std::size_t a = 0; a < n && !under; ++a) under = ops.subset(i, sp.primes[a]);
    if (!under) {
      rep.closed_ideals_under_primes =
          Verdict::fail(ops.format(i) + " is cl-closed and proper but lies in no prime");
      break;
    }
  }
  return rep;
}

}  // namespace approx
