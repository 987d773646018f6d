#include "approx/hom.hpp"

#include "approx/errors.hpp"
#include "detail/parallel.hpp"

#include <functional>
#include <random>

namespace approx {

RingHom::RingHom(std::shared_ptr<const FiniteRing> src, std::shared_ptr<const FiniteRing> dst,
                 std::vector<Index> map)
    : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
  const auto& a = *src_;
  const auto& b = *dst_;
  if (map_.size() != a.size())
    throw PreconditionError("not-hom", "table has " + std::to_string(map_.size()) +
                                           " entries for a ring with " +
                                           std::to_string(a.size()) + " elements");
  for (Index v : map_)
    if (v >= b.size()) throw PreconditionError("not-hom", "table entry out of range");
  if (map_[a.one()] != b.one())
    throw PreconditionError("not-hom", "f(1) = " + b.label(map_[a.one()]) + " is not 1");
  for (Index x = 0; x < a.size(); ++x)
    for (Index y = 0; y < a.size(); ++y) {
      if (map_[a.add(x, y)] != b.add(map_[x], map_[y]))
        throw PreconditionError("not-hom", "f(" + a.label(x) + " + " + a.label(y) +
                                               ") != f(x) + f(y)");
      if (map_[a.mul(x, y)] != b.mul(map_[x], map_[y]))
        throw PreconditionError("not-hom", "f(" + a.label(x) + " * " + a.label(y) +
                                               ") != f(x) f(y)");
    }
}

RingHom RingHom::identity(const Ring& r) {
  const auto& fr = r.finite();
  std::vector<Index> map(fr.size());
  for (Index i = 0; i < fr.size(); ++i) map[i] = i;
  return RingHom(r.finite_ptr(), r.finite_ptr(), std::move(map));
}

RingHom RingHom::canonical(const Ring& src, const Ring& dst) {
  if (src.kind() != RingKind::Residue)
    throw PreconditionError("not-hom", "canonical maps start at Z/n, not " + src.to_string());
  std::vector<Index> map;
  const std::uint64_t n = src.residue_modulus();
  for (std::uint64_t i = 0; i < n; ++i)
    map.push_back(static_cast<Index>(dst.from_integer(BigInt(i)).index()));
  return RingHom(src.finite_ptr(), dst.finite_ptr(), std::move(map));
}

ElemSet RingHom::image(const ElemSet& a) const {
  ElemSet out(dst_->size());
  for (Index x : members(a)) out.set(map_[x]);
  return out;
}

ElemSet RingHom::preimage(const ElemSet& b) const {
  ElemSet out(src_->size());
  for (Index x = 0; x < src_->size(); ++x)
    if (b.test(map_[x])) out.set(x);
  return out;
}

ElemSet RingHom::kernel() const { return preimage(dst_->singleton(dst_->zero())); }

bool RingHom::surjective() const { return image(src_->full_set()).all(); }

std::vector<ElemSet> mode_domain(const FiniteRing& r, const AxiomMode& mode, std::size_t guard) {
  const std::size_t n = r.size();
  std::vector<ElemSet> out;
  switch (mode.kind) {
    case AxiomMode::Exhaustive: {
      if (n > kExhaustiveMaxSize)
        throw ResourceLimit("all subsets of a ring with " + std::to_string(n) +
                            " elements exceed the 2^16 cap; use subgroup or sampled mode");
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        ElemSet s(n);
        for (std::size_t i = 0; i < n; ++i)
          if (m >> i & 1u) s.set(i);
        out.push_back(std::move(s));
      }
      break;
    }
    case AxiomMode::Subgroups:
      out = enumerate_subgroups(r, guard);
      break;
    case AxiomMode::Sampled: {
      std::mt19937_64 rng(mode.seed);
      const std::uint64_t count = mode.count ? mode.count : kDefaultSampleCount;
      for (std::uint64_t i = 0; i < count; ++i) {
        ElemSet s(n);
        auto d = 1 + rng() % 4;
        for (std::size_t x = 0; x < n; ++x)
          if (rng() % 8 < d) s.set(x);
        out.push_back(std::move(s));
      }
      break;
    }
  }
  return out;
}

namespace {

Verdict first_failing(const std::vector<ElemSet>& dom, bool parallel,
                      const std::function<std::optional<std::string>(const ElemSet&)>& test) {
  auto hit = detail::first_hit<std::string>(
      dom.size(), parallel, [&](std::uint64_t i) { return test(dom[i]); });
  return hit ? Verdict::fail(*hit) : Verdict::ok();
}

}  // namespace

Verdict is_image_morphic(const RingHom& f, const SetClosure& cl_r, const SetClosure& cl_s,
                         const AxiomMode& mode, bool parallel) {
  return first_failing(mode_domain(f.src(), mode), parallel,
                       [&](const ElemSet& a) -> std::optional<std::string> {
                         ElemSet lhs = f.image(cl_r(a));
                         ElemSet rhs = cl_s(f.image(a));
                         if (lhs.is_subset_of(rhs)) return std::nullopt;
                         return "A = " + f.src().format_set(a) + ": f(cl(A)) = " +
                                f.dst().format_set(lhs) + " is not inside cl(f(A)) = " +
                                f.dst().format_set(rhs);
                       });
}

Verdict is_preimage_continuous(const RingHom& f, const SetClosure& cl_r, const SetClosure& cl_s,
                               const AxiomMode& mode, bool parallel) {
  return first_failing(mode_domain(f.dst(), mode), parallel,
                       [&](const ElemSet& b) -> std::optional<std::string> {
                         ElemSet lhs = f.preimage(cl_s(b));
                         ElemSet rhs = cl_r(f.preimage(b));
                         if (lhs.is_subset_of(rhs)) return std::nullopt;
                         return "B = " + f.dst().format_set(b) + ": f^-1(cl(B)) = " +
                                f.src().format_set(lhs) + " is not inside cl(f^-1(B)) = " +
                                f.src().format_set(rhs);
                       });
}

namespace {

std::optional<Verdict> prime_or_reason(const ApproxRing& ar, const ElemSet& p) {
  try {
    return is_approx_prime(ar, p);
  } catch (const PreconditionError& e) {
    return Verdict::fail(e.what());
  }
}

}  // namespace

TransferResult preimage_transfer(const RingHom& f, const ApproxRing& r, const ApproxRing& s,
                                 const ElemSet& j, const AxiomMode& mode) {
  if (auto v = is_preimage_continuous(f, r.cl, s.cl, mode); !v)
    throw PreconditionError("functoriality-unverified", "not preimage-continuous: " + v.witness);
  if (auto v = is_image_morphic(f, r.cl, s.cl, mode); !v)
    throw PreconditionError("functoriality-unverified", "not image-morphic: " + v.witness);
  if (auto v = is_approx_ideal(s, j); !v) throw PreconditionError("not-approx-ideal", v.witness);
  TransferResult out;
  out.ideal = f.preimage(j);
  out.approx_ideal = is_approx_ideal(r, out.ideal);
  out.approx_prime = prime_or_reason(r, out.ideal);
  out.prime_clause = prime_or_reason(s, j)->holds;
  if (!out.prime_clause) out.note = "J is not approximately prime; primeness clause not applicable";
  return out;
}

ImageTransferResult image_transfer(const RingHom& f, const ApproxRing& r, const ApproxRing& s,
                                   const ElemSet& i, const AxiomMode& mode) {
  if (!f.surjective()) throw PreconditionError("not-surjective", "f is not onto");
  if (auto v = is_image_morphic(f, r.cl, s.cl, mode); !v)
    throw PreconditionError("functoriality-unverified", "not image-morphic: " + v.witness);
  if (auto v = is_approx_ideal(r, i); !v) throw PreconditionError("not-approx-ideal", v.witness);
  ImageTransferResult out;
  out.ideal = f.image(i);
  out.approx_ideal = is_approx_ideal(s, out.ideal);
  out.approx_prime = prime_or_reason(s, out.ideal);
  const ElemSet ker = f.kernel();
  const bool cont = static_cast<bool>(is_preimage_continuous(f, r.cl, s.cl, mode));
  if (!prime_or_reason(r, i)->holds)
    out.note = "I is not approximately prime; primeness clause not applicable";
  else if (!ker.is_subset_of(i))
    out.note = "Ker f is not inside I; primeness clause not applicable";
  else if (!cont)
    out.note = "f is not preimage-continuous; primeness clause not applicable";
  else
    out.prime_clause = true;
  out.preimage_continuous = cont;
  out.pullback = first_failing(
      mode_domain(f.src(), mode), true, [&](const ElemSet& a) -> std::optional<std::string> {
        ElemSet lhs = f.preimage(s.cl(f.image(a)));
        ElemSet rhs = r.cl(f.src().sumset(a, ker));
        if (lhs.is_subset_of(rhs)) return std::nullopt;
        return "A = " + f.src().format_set(a) + ": f^-1(cl(f(A))) is not inside cl(A + Ker f)";
      });
  return out;
}

// ------------------------------------------------------------ Z -> Z/n

namespace {

// Generator g >= 0 of the subgroup of Z/n generated by a residue set, as a
// divisor of n (g = n for {0} or the empty set).
std::uint64_t residue_gcd(const ElemSet& b, std::uint64_t n) {
  std::uint64_t g = n;
  for (Index x : members(b)) g = gcd_u64(g, x);
  return g;
}

ElemSet multiples(std::uint64_t g, std::uint64_t n) {
  ElemSet out(n);
  for (std::uint64_t x = 0; x < n; x += g) out.set(x);
  return out;
}

}  // namespace

ElemSet z_image(const ZReduction& f, std::uint64_t d) {
  const std::uint64_t n = f.n();
  return multiples(gcd_u64(d % n, n), n);
}

std::uint64_t z_preimage(const ZReduction& f, const ElemSet& j) {
  if (!f.cl_n.ring().finite().is_subgroup(j))
    throw PreconditionError("not-subgroup", "J is not a subgroup of Z/" + std::to_string(f.n()));
  return residue_gcd(j, f.n());
}

Verdict z_is_image_morphic(const ZReduction& f, std::uint64_t d_max) {
  const std::uint64_t m = z_modulus(f.cl_z);
  auto cl_n = compile_closure(f.cl_n);
  for (std::uint64_t d = 0; d <= d_max; ++d) {
    const std::uint64_t c = gcd_u64(d, m);  // cl_z((d)) = (c)
    ElemSet lhs = z_image(f, c);
    ElemSet rhs = cl_n(z_image(f, d));
    if (!lhs.is_subset_of(rhs))
      return Verdict::fail("A = (" + std::to_string(d) + "): f(cl(A)) is not inside cl(f(A))");
  }
  return Verdict::ok();
}

Verdict z_is_preimage_continuous(const ZReduction& f, const AxiomMode& mode) {
  const std::uint64_t m = z_modulus(f.cl_z);
  const std::uint64_t n = f.n();
  const bool set_shift = f.cl_z.is<SetShift>();
  const auto& fr = f.cl_n.ring().finite();
  auto cl_n = compile_closure(f.cl_n);
  return first_failing(mode_domain(fr, mode), true, [&](const ElemSet& b) -> std::optional<std::string> {
    ElemSet lhs = cl_n(b);
    // x + nZ ⊆ cl_z(f^-1(B)) for every residue x in lhs.
    auto inside = [&](std::uint64_t x) {
      if (set_shift) {
        std::uint64_t h = gcd_u64(n, m);
        for (Index y : members(b))
          if ((x + n - y % h) % h == 0) return true;
        return false;
      }
      std::uint64_t g = b.none() ? 0 : residue_gcd(b, n);
      g = gcd_u64(g, m);
      return g != 0 && gcd_u64(x, n) % g == 0;
    };
    for (Index x : members(lhs))
      if (!inside(x))
        return "B = " + fr.format_set(b) + ": " + std::to_string(x) +
               " + nZ lies in f^-1(cl(B)) but not in cl(f^-1(B))";
    return std::nullopt;
  });
}

ZPreimageTransfer z_preimage_transfer(const ZReduction& f, const ElemSet& j, const AxiomMode& mode) {
  if (auto v = z_is_preimage_continuous(f, mode); !v)
    throw PreconditionError("functoriality-unverified", "not preimage-continuous: " + v.witness);
  if (auto v = z_is_image_morphic(f); !v)
    throw PreconditionError("functoriality-unverified", "not image-morphic: " + v.witness);
  const auto s = ApproxRing::of(f.cl_n);
  if (auto v = is_approx_ideal(s, j); !v) throw PreconditionError("not-approx-ideal", v.witness);
  ZPreimageTransfer out;
  out.k = z_preimage(f, j);
  out.approx_ideal = Verdict::ok();  // every subgroup (k) of Z is an ideal
  if (out.k != 1) {
    Verdict closed = z_is_approx_prime_closed(f.cl_z, out.k);
    Verdict brute = z_is_approx_prime_brute(f.cl_z, out.k);
    if (closed.holds != brute.holds)
      out.approx_prime = Verdict::fail("closed form and brute force disagree on (" +
                                       std::to_string(out.k) + ")");
    else
      out.approx_prime = closed;
  }
  out.prime_clause = prime_or_reason(s, j)->holds;
  if (!out.prime_clause) out.note = "J is not approximately prime; primeness clause not applicable";
  return out;
}

ImageTransferResult z_image_transfer(const ZReduction& f, std::uint64_t d, const AxiomMode& mode) {
  if (auto v = z_is_image_morphic(f); !v)
    throw PreconditionError("functoriality-unverified", "not image-morphic: " + v.witness);
  const std::uint64_t n = f.n();
  const std::uint64_t m = z_modulus(f.cl_z);
  const auto s = ApproxRing::of(f.cl_n);
  ImageTransferResult out;
  out.ideal = z_image(f, d);
  out.approx_ideal = is_approx_ideal(s, out.ideal);
  try {
    out.approx_prime = is_approx_prime(s, out.ideal);
  } catch (const PreconditionError& e) {
    out.approx_prime = Verdict::fail(e.what());
  }
  const bool cont = static_cast<bool>(z_is_preimage_continuous(f, mode));
  const bool i_prime = d != 1 && z_is_approx_prime_closed(f.cl_z, d).holds;
  if (!i_prime)
    out.note = "I is not approximately prime; primeness clause not applicable";
  else if (d == 0 || n % d != 0)
    out.note = "Ker f = (" + std::to_string(n) + ") is not inside I; primeness clause not applicable";
  else if (!cont)
    out.note = "f is not preimage-continuous; primeness clause not applicable";
  else
    out.prime_clause = true;
  out.preimage_continuous = cont;
  // A ranges over (a), a <= 1000, as for image-morphism.
  out.pullback = Verdict::ok();
  auto cl_n = compile_closure(f.cl_n);
  for (std::uint64_t a = 0; a <= 1000 && out.pullback.holds; ++a) {
    // A + Ker f = (gcd(a, n)); its closure is (g) with g = gcd(a, n, m).
    const std::uint64_t g = gcd_u64(gcd_u64(a, n), m);
    for (Index x : members(cl_n(z_image(f, a))))
      if (g == 0 || x % g != 0) {
        out.pullback = Verdict::fail("A = (" + std::to_string(a) + "): " + std::to_string(x) +
                                     " + nZ lies in f^-1(cl(f(A))) but not in cl(A + Ker f)");
        break;
      }
  }
  return out;
}

}  // namespace approx
