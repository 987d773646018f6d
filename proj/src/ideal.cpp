#include "approx/ideal.hpp"

#include "approx/errors.hpp"

#include <algorithm>
#include <cctype>

namespace approx {
namespace {

void require_same(const Ring& a, const Ring& b) {
  if (a != b) throw DomainMismatch("rings differ: " + a.to_string() + " vs " + b.to_string());
}

bool divides(const BigInt& d, const BigInt& x) {
  if (d == 0) return x == 0;
  return x % d == 0;
}

}  // namespace

Subset::Subset(Ring ring, ElemSet set) : ring_(std::move(ring)), value_(std::move(set)) {
  if (!ring_.is_finite()) throw DomainMismatch("element sets require a finite ring");
  if (std::get<ElemSet>(value_).size() != ring_.finite().size())
    throw DomainMismatch("element set size does not match ring");
}

Subset::Subset(Ring ring, Principal p) : ring_(std::move(ring)), value_(std::move(p)) {
  auto& gens = std::get<Principal>(value_).gens;
  if (ring_.is_finite() || gens.size() != ring_.integer_rank())
    throw DomainMismatch("principal subgroups live in Z or Z^k");
  for (auto& g : gens) g = abs(g);
}

Subset Subset::principal(const BigInt& d) { return Subset(Ring::integers(), Principal{{d}}); }

const BigInt& Subset::generator() const {
  if (ring_.kind() != RingKind::Integers) throw DomainMismatch("not a subgroup of Z");
  return principal().gens[0];
}

bool Subset::contains(const RingElem& x) const {
  require_same(ring_, x.ring());
  if (is_set()) return set().test(x.index());
  const auto& g = principal().gens;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!divides(g[i], x.ints()[i])) return false;
  return true;
}

bool Subset::is_subgroup() const {
  return is_set() ? ring_.finite().is_subgroup(set()) : true;
}

bool Subset::is_ideal() const { return is_set() ? ring_.finite().is_ideal(set()) : true; }

bool Subset::subset_of(const Subset& o) const {
  require_same(ring_, o.ring_);
  if (is_set() != o.is_set()) throw DomainMismatch("mixed subset representations");
  if (is_set()) return set().is_subset_of(o.set());
  const auto &a = principal().gens, &b = o.principal().gens;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!divides(b[i], a[i])) return false;
  return true;
}

bool Subset::is_whole_ring() const {
  if (is_set()) return set().all();
  return std::all_of(principal().gens.begin(), principal().gens.end(),
                     [](const BigInt& g) { return g == 1; });
}

std::string Subset::to_string() const {
  if (is_set()) return ring_.finite().format_set(set());
  std::string s;
  for (std::size_t i = 0; i < principal().gens.size(); ++i) {
    if (i) s += "x";
    s += "(" + principal().gens[i].str() + ")";
  }
  return s;
}

bool Subset::operator==(const Subset& o) const {
  return ring_ == o.ring_ && value_ == o.value_;
}

IdealRep ideal_generated(const Ring& ring, const std::vector<RingElem>& gens) {
  for (const auto& g : gens) require_same(ring, g.ring());
  if (!ring.is_finite()) {
    Principal p{std::vector<BigInt>(ring.integer_rank(), 0)};
    for (const auto& g : gens)
      for (std::size_t i = 0; i < p.gens.size(); ++i) p.gens[i] = gcd(p.gens[i], g.ints()[i]);
    return IdealRep{ring, gens, Subset(ring, std::move(p))};
  }
  const auto& fr = ring.finite();
  return IdealRep{ring, gens, Subset(ring, fr.ideal_closure(to_elem_set(ring, gens)))};
}

IdealRep ideal_of(const Subset& s) {
  if (s.is_set()) return ideal_generated(s.ring(), subset_elements(s));
  std::vector<RingElem> gens;
  const auto& g = s.principal().gens;
  for (std::size_t i = 0; i < g.size(); ++i) {
    RingElem::Ints v(g.size(), 0);
    v[i] = g[i];
    gens.emplace_back(s.ring(), std::move(v));
  }
  return ideal_generated(s.ring(), gens);
}

IdealRep ideal_sum(const IdealRep& a, const IdealRep& b) {
  require_same(a.ring, b.ring);
  auto gens = a.generators;
  gens.insert(gens.end(), b.generators.begin(), b.generators.end());
  return ideal_generated(a.ring, gens);
}

IdealRep ideal_classical_product(const IdealRep& a, const IdealRep& b) {
  require_same(a.ring, b.ring);
  std::vector<RingElem> gens;
  for (const auto& x : a.generators)
    for (const auto& y : b.generators) gens.push_back(x * y);
  return ideal_generated(a.ring, gens);
}

std::vector<Subset> enumerate_subgroups(const Ring& ring, std::size_t guard) {
  if (!ring.is_finite()) throw NotEnumerable("ring " + ring.to_string() + " is infinite");
  if (*ring.cardinality() > guard)
    throw ResourceLimit("subgroup enumeration: ring " + ring.to_string() + " exceeds guard " +
                        std::to_string(guard));
  std::vector<Subset> out;
  for (auto& s : enumerate_subgroups(ring.finite(), guard)) out.emplace_back(ring, std::move(s));
  return out;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::vector<RingElem> parse_element_list(const Ring& ring, std::string_view text) {
  std::vector<RingElem> out;
  bool blank = std::all_of(text.begin(), text.end(),
                           [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) return out;
  for (auto part : split_top_level(text)) {
    std::size_t off = static_cast<std::size_t>(part.data() - text.data());
    try {
      out.push_back(ring.parse_element(part));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), off + e.position());
    }
  }
  return out;
}

std::vector<RingElem> subset_elements(const Subset& s) {
  std::vector<RingElem> out;
  for (Index i : members(s.set())) out.push_back(element_at(s.ring(), i));
  return out;
}

ElemSet to_elem_set(const Ring& ring, const std::vector<RingElem>& xs) {
  ElemSet s(ring.finite().size());
  for (const auto& x : xs) {
    require_same(ring, x.ring());
    s.set(x.index());
  }
  return s;
}

}  // namespace approx
