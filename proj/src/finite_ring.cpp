#include "approx/finite_ring.hpp"

#include "approx/errors.hpp"

#include <algorithm>
#include <set>

namespace approx {

std::vector<Index> members(const ElemSet& s) {
  std::vector<Index> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i))
    out.push_back(static_cast<Index>(i));
  return out;
}

FiniteRing::FiniteRing(std::size_t size, std::vector<Index> add, std::vector<Index> mul,
                       Index zero, Index one, std::vector<std::string> labels)
    : size_(size),
      add_(std::move(add)),
      mul_(std::move(mul)),
      neg_(size),
      zero_(zero),
      one_(one),
      labels_(std::move(labels)) {
  if (add_.size() != size_ * size_ || mul_.size() != size_ * size_ || labels_.size() != size_)
    throw Error("FiniteRing: table sizes do not match");
  for (Index a = 0; a < size_; ++a) {
    bool found = false;
    for (Index b = 0; b < size_; ++b)
      if (this->add(a, b) == zero_) {
        neg_[a] = b;
        found = true;
        break;
      }
    if (!found) throw Error("FiniteRing: element " + labels_[a] + " has no additive inverse");
  }
}

FiniteRing FiniteRing::from_ring(const Ring& ring) {
  auto elems = enumerate_elements(ring);
  const std::size_t n = elems.size();
  std::vector<Index> add(n * n), mul(n * n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elems) labels.push_back(e.to_string());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      auto s = static_cast<Index>((elems[a] + elems[b]).index());
      auto m = static_cast<Index>((elems[a] * elems[b]).index());
      add[a * n + b] = add[b * n + a] = s;
      mul[a * n + b] = mul[b * n + a] = m;
    }
  FiniteRing fr(n, std::move(add), std::move(mul), static_cast<Index>(ring.zero().index()),
                static_cast<Index>(ring.one().index()), std::move(labels));
  fr.descriptor_ = ring;
  return fr;
}

Index FiniteRing::power(Index a, std::uint64_t e) const {
  Index acc = one_, base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

ElemSet FiniteRing::full_set() const {
  ElemSet s(size_);
  s.set();
  return s;
}

ElemSet FiniteRing::singleton(Index i) const {
  ElemSet s(size_);
  s.set(i);
  return s;
}

ElemSet FiniteRing::from_members(const std::vector<Index>& xs) const {
  ElemSet s(size_);
  for (auto x : xs) s.set(x);
  return s;
}

ElemSet FiniteRing::subgroup_closure(const ElemSet& gens) const {
  // In a finite group the submonoid generated by gens is already a subgroup.
  std::vector<Index> g = members(gens);
  ElemSet out = singleton(zero_);
  std::vector<Index> frontier{zero_};
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index x : frontier)
      for (Index y : g) {
        Index z = add(x, y);
        if (!out.test(z)) {
          out.set(z);
          next.push_back(z);
        }
      }
    frontier.swap(next);
  }
  return out;
}

ElemSet FiniteRing::ideal_closure(const ElemSet& gens) const {
  ElemSet scaled(size_);
  for (Index g : members(gens))
    for (Index r = 0; r < size_; ++r) scaled.set(mul(r, g));
  return subgroup_closure(scaled);
}

ElemSet FiniteRing::sumset(const ElemSet& a, const ElemSet& b) const {
  ElemSet out(size_);
  auto mb = members(b);
  for (Index x : members(a))
    for (Index y : mb) out.set(add(x, y));
  return out;
}

ElemSet FiniteRing::scale(Index r, const ElemSet& a) const {
  ElemSet out(size_);
  for (Index x : members(a)) out.set(mul(r, x));
  return out;
}

ElemSet FiniteRing::product_set(const ElemSet& a, const ElemSet& b) const {
  ElemSet out(size_);
  auto mb = members(b);
  for (Index x : members(a))
    for (Index y : mb) out.set(mul(x, y));
  return out;
}

bool FiniteRing::is_subgroup(const ElemSet& s) const {
  if (!s.test(zero_)) return false;
  auto m = members(s);
  for (Index x : m) {
    if (!s.test(neg(x))) return false;
    for (Index y : m)
      if (!s.test(add(x, y))) return false;
  }
  return true;
}

bool FiniteRing::is_ideal(const ElemSet& s) const {
  if (!is_subgroup(s)) return false;
  for (Index x : members(s))
    for (Index r = 0; r < size_; ++r)
      if (!s.test(mul(r, x))) return false;
  return true;
}

std::string FiniteRing::format_set(const ElemSet& s) const {
  std::string out = "{";
  bool first = true;
  for (Index x : members(s)) {
    if (!first) out += ", ";
    first = false;
    out += labels_[x];
  }
  return out + "}";
}

namespace {

bool set_less(const ElemSet& a, const ElemSet& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  // Compare by member lists so that order follows element order.
  auto i = a.find_first(), j = b.find_first();
  while (i != ElemSet::npos && j != ElemSet::npos) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return false;
}

}  // namespace

std::vector<ElemSet> enumerate_subgroups(const FiniteRing& ring, std::size_t guard) {
  if (ring.size() > guard)
    throw ResourceLimit("subgroup enumeration: ring has " + std::to_string(ring.size()) +
                        " elements, guard is " + std::to_string(guard));
  std::set<ElemSet> seen;
  std::vector<ElemSet> work{ring.singleton(ring.zero())};
  seen.insert(work.front());
  while (!work.empty()) {
    ElemSet h = std::move(work.back());
    work.pop_back();
    for (Index x = 0; x < ring.size(); ++x) {
      if (h.test(x)) continue;
      ElemSet g = h;
      g.set(x);
      ElemSet c = ring.subgroup_closure(g);
      if (seen.insert(c).second) work.push_back(std::move(c));
    }
  }
  std::vector<ElemSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), set_less);
  for (const auto& s : out)
    if (!ring.is_subgroup(s)) throw Error("subgroup enumeration produced a non-subgroup");
  return out;
}

std::vector<ElemSet> enumerate_ideals(const FiniteRing& ring, std::size_t guard) {
  auto subs = enumerate_subgroups(ring, guard);
  std::vector<ElemSet> out;
  for (auto& s : subs)
    if (ring.is_ideal(s)) out.push_back(std::move(s));
  return out;
}

std::optional<std::string> find_ring_axiom_violation(const FiniteRing& r) {
  const Index n = static_cast<Index>(r.size());
  auto L = [&](Index i) { return r.label(i); };
  for (Index a = 0; a < n; ++a) {
    if (r.add(a, r.zero()) != a) return "additive identity fails at " + L(a);
    if (r.mul(a, r.one()) != a) return "multiplicative identity fails at " + L(a);
    for (Index b = 0; b < n; ++b) {
      if (r.add(a, b) != r.add(b, a)) return "addition not commutative at " + L(a) + ", " + L(b);
      if (r.mul(a, b) != r.mul(b, a))
        return "multiplication not commutative at " + L(a) + ", " + L(b);
      for (Index c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          return "addition not associative at " + L(a) + ", " + L(b) + ", " + L(c);
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          return "multiplication not associative at " + L(a) + ", " + L(b) + ", " + L(c);
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          return "distributivity fails at " + L(a) + ", " + L(b) + ", " + L(c);
      }
    }
  }
  return std::nullopt;
}

}  // namespace approx
