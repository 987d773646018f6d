#pragma once

// Brute-force reference computations. They deliberately avoid the library's
// algorithms (no gcd, no subgroup enumeration, no closure compilation) so that
// agreement is evidence and not a tautology.

#include "approx/finite_ring.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using approx::ElemSet;
using approx::FiniteRing;
using approx::Index;

// Least fixpoint of {0} ∪ gens under x+y, -x and r*x.
inline ElemSet ideal_closure(const FiniteRing& fr, const ElemSet& gens) {
  std::set<Index> s{fr.zero()};
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens.test(i)) s.insert(static_cast<Index>(i));
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Index> cur(s.begin(), s.end());
    for (Index x : cur) {
      changed |= s.insert(fr.neg(x)).second;
      for (Index y : cur) changed |= s.insert(fr.add(x, y)).second;
      for (Index r = 0; r < fr.size(); ++r) changed |= s.insert(fr.mul(r, x)).second;
    }
  }
  ElemSet out(fr.size());
  for (Index x : s) out.set(x);
  return out;
}

// Smallest positive d*a + m*b, found by search rather than Euclid.
inline std::uint64_t smallest_positive_combination(std::uint64_t d, std::uint64_t m) {
  if (d == 0) return m;
  if (m == 0) return d;
  for (std::uint64_t t = 1;; ++t)
    for (std::uint64_t a = 0; a < m; ++a)
      if ((t + m * d - (d * a) % (m * d)) % m == 0) return t;
}

// Additive subgroups by brute force over all subsets (|R| <= 16).
inline std::vector<ElemSet> all_subgroups(const FiniteRing& fr) {
  std::vector<ElemSet> out;
  const std::size_t n = fr.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (!(m >> fr.zero() & 1)) continue;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      if (!(m >> x & 1)) continue;
      for (std::size_t y = 0; y < n && ok; ++y)
        if ((m >> y & 1) && !(m >> fr.sub(static_cast<Index>(x), static_cast<Index>(y)) & 1))
          ok = false;
    }
    if (!ok) continue;
    ElemSet s(n);
    for (std::size_t x = 0; x < n; ++x)
      if (m >> x & 1) s.set(x);
    out.push_back(s);
  }
  return out;
}

inline bool c4a_fails(const FiniteRing& fr, const std::function<ElemSet(const ElemSet&)>& cl,
                      const ElemSet& a, const ElemSet& b) {
  ElemSet ca = cl(a), cb = cl(b), ab(fr.size()), lhs(fr.size());
  for (std::size_t x = 0; x < fr.size(); ++x)
    for (std::size_t y = 0; y < fr.size(); ++y) {
      if (a.test(x) && b.test(y)) ab.set(fr.add(static_cast<Index>(x), static_cast<Index>(y)));
      if (ca.test(x) && cb.test(y)) lhs.set(fr.add(static_cast<Index>(x), static_cast<Index>(y)));
    }
  return !lhs.is_subset_of(cl(ab));
}

// Naive additive closure of a set, the zero included.
inline ElemSet generated_subgroup(const FiniteRing& fr, const ElemSet& gens) {
  std::set<Index> s{fr.zero()};
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens.test(i)) s.insert(static_cast<Index>(i));
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Index> cur(s.begin(), s.end());
    for (Index x : cur)
      for (Index y : cur) changed |= s.insert(fr.add(x, y)).second;
  }
  ElemSet out(fr.size());
  for (Index x : s) out.set(x);
  return out;
}

// C4a with X + Y read as the subgroup generated by X ∪ Y.
inline bool c4a_fails_subgroup(const FiniteRing& fr,
                               const std::function<ElemSet(const ElemSet&)>& cl,
                               const ElemSet& a, const ElemSet& b) {
  ElemSet lhs = generated_subgroup(fr, cl(a) | cl(b));
  return !lhs.is_subset_of(cl(generated_subgroup(fr, a | b)));
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d < n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace oracle
