#include "approx/ring.hpp"

#include "approx/errors.hpp"
#include "approx/finite_ring.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace approx {

// Functions rings with more points than this are rejected at construction;
// every element carries a full value table.
inline constexpr std::uint64_t kMaxFunctionPoints = 65536;

struct Ring::Data {
  RingKind kind = RingKind::Integers;
  std::uint64_t n = 0;
  std::vector<Ring> factors;
  std::uint32_t p = 0;
  std::vector<std::uint32_t> modulus;
  std::uint32_t nvars = 0;
  std::uint64_t npoints = 0;
  bool finite = false;
  std::size_t int_rank = 0;
  std::vector<std::uint32_t> radices;
  std::vector<std::size_t> factor_offsets;

  mutable std::once_flag table_once;
  mutable std::unique_ptr<FiniteRing> table;
  mutable std::exception_ptr table_error;
};

namespace {

using Digits = RingElem::Digits;

const Ring::Data& data_of(const Ring& r) { return r.data(); }

// Arithmetic on digit strings. `a`, `b`, `out` point at num_digits() digits.

void add_digits(const Ring& r, const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out);
void neg_digits(const Ring& r, const std::uint32_t* a, std::uint32_t* out);
void mul_digits(const Ring& r, const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out);

std::uint32_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint32_t>((a + b) % m);
}

void add_digits(const Ring& r, const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) {
  const auto& d = data_of(r);
  switch (d.kind) {
    case RingKind::Residue:
      out[0] = addmod(a[0], b[0], d.n);
      return;
    case RingKind::PolyQuotient:
    case RingKind::Function:
      for (std::size_t i = 0; i < d.radices.size(); ++i) out[i] = addmod(a[i], b[i], d.p);
      return;
    case RingKind::Product:
      for (std::size_t f = 0; f < d.factors.size(); ++f) {
        std::size_t off = d.factor_offsets[f];
        add_digits(d.factors[f], a + off, b + off, out + off);
      }
      return;
    case RingKind::Integers:
      break;
  }
  throw Error("add_digits on infinite ring");
}

void neg_digits(const Ring& r, const std::uint32_t* a, std::uint32_t* out) {
  const auto& d = data_of(r);
  switch (d.kind) {
    case RingKind::Residue:
      out[0] = a[0] == 0 ? 0 : static_cast<std::uint32_t>(d.n - a[0]);
      return;
    case RingKind::PolyQuotient:
    case RingKind::Function:
      for (std::size_t i = 0; i < d.radices.size(); ++i) out[i] = a[i] == 0 ? 0 : d.p - a[i];
      return;
    case RingKind::Product:
      for (std::size_t f = 0; f < d.factors.size(); ++f) {
        std::size_t off = d.factor_offsets[f];
        neg_digits(d.factors[f], a + off, out + off);
      }
      return;
    case RingKind::Integers:
      break;
  }
  throw Error("neg_digits on infinite ring");
}

void mul_digits(const Ring& r, const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) {
  const auto& d = data_of(r);
  switch (d.kind) {
    case RingKind::Residue:
      out[0] = static_cast<std::uint32_t>(
          static_cast<unsigned __int128>(a[0]) * b[0] % d.n);
      return;
    case RingKind::Function:
      for (std::size_t i = 0; i < d.radices.size(); ++i)
        out[i] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * b[i] % d.p);
      return;
    case RingKind::PolyQuotient: {
      const std::size_t deg = d.radices.size();
      // Digits are most significant first; work lowest degree first.
      std::vector<std::uint64_t> prod(2 * deg, 0);
      for (std::size_t i = 0; i < deg; ++i) {
        std::uint64_t ca = a[deg - 1 - i];
        if (ca == 0) continue;
        for (std::size_t j = 0; j < deg; ++j)
          prod[i + j] = (prod[i + j] + ca * b[deg - 1 - j]) % d.p;
      }
      for (std::size_t k = 2 * deg - 1; k >= deg; --k) {
        std::uint64_t c = prod[k];
        if (c == 0) continue;
        // x^k = x^(k-deg) * x^deg and x^deg = -(modulus - x^deg).
        for (std::size_t t = 0; t < deg; ++t)
          prod[k - deg + t] = (prod[k - deg + t] + (d.p - c) * d.modulus[t]) % d.p;
        prod[k] = 0;
      }
      for (std::size_t i = 0; i < deg; ++i)
        out[deg - 1 - i] = static_cast<std::uint32_t>(prod[i]);
      return;
    }
    case RingKind::Product:
      for (std::size_t f = 0; f < d.factors.size(); ++f) {
        std::size_t off = d.factor_offsets[f];
        mul_digits(d.factors[f], a + off, b + off, out + off);
      }
      return;
    case RingKind::Integers:
      break;
  }
  throw Error("mul_digits on infinite ring");
}

void one_digits(const Ring& r, std::uint32_t* out) {
  const auto& d = data_of(r);
  switch (d.kind) {
    case RingKind::Residue:
      out[0] = 1;
      return;
    case RingKind::PolyQuotient:
      std::fill(out, out + d.radices.size(), 0u);
      out[d.radices.size() - 1] = 1 % d.p;
      return;
    case RingKind::Function:
      std::fill(out, out + d.radices.size(), 1u);
      return;
    case RingKind::Product:
      for (std::size_t f = 0; f < d.factors.size(); ++f)
        one_digits(d.factors[f], out + d.factor_offsets[f]);
      return;
    case RingKind::Integers:
      break;
  }
  throw Error("one_digits on infinite ring");
}

// ---------------------------------------------------------------- parsing

class Cursor {
 public:
  Cursor(std::string_view s, std::size_t base) : s_(s), base_(base) {}
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  std::size_t pos() const { return pos_; }
  std::size_t abs_pos() const { return base_ + pos_; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view lit) {
    skip_ws();
    if (s_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view lit) {
    if (!eat(lit)) fail("expected '" + std::string(lit) + "'");
  }
  std::uint64_t number() {
    skip_ws();
    std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    BigInt v(std::string(s_.substr(start, pos_ - start)));
    if (v > BigInt(std::numeric_limits<std::uint32_t>::max()))
      fail("number too large");
    return v.convert_to<std::uint64_t>();
  }
  // Text up to the next top-level ',' or ']' (or end).
  std::string_view until_delimiter() {
    std::size_t start = pos_;
    int depth = 0;
    while (!done()) {
      char c = s_[pos_];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("ring: " + what, abs_pos());
  }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

Ring parse_ring_at(Cursor& c) {
  c.skip_ws();
  std::size_t at = c.abs_pos();
  try {
    if (c.eat("Zn:")) {
      std::uint64_t n = c.number();
      return Ring::residue(n);
    }
    if (c.eat("prod:[")) {
      std::vector<Ring> fs;
      fs.push_back(parse_ring_at(c));
      while (c.eat(",")) fs.push_back(parse_ring_at(c));
      c.expect("]");
      return Ring::product(std::move(fs));
    }
    if (c.eat("GF:")) {
      auto p = static_cast<std::uint32_t>(c.number());
      c.expect("/");
      std::size_t poly_at = c.abs_pos();
      std::string_view text = c.until_delimiter();
      auto terms = parse_polynomial(text, 1, poly_at);
      std::uint32_t deg = 0;
      for (const auto& t : terms) deg = std::max(deg, t.exps[0]);
      if (p < 2 || !is_prime(std::uint64_t{p}))
        throw ParseError("ring: GF characteristic must be prime", at);
      std::vector<std::uint32_t> mod(deg + 1, 0);
      for (const auto& t : terms)
        mod[t.exps[0]] = to_u64(mod_floor(t.coeff, p)) & 0xffffffffu;
      return Ring::poly_quotient(p, mod);
    }
    if (c.eat("Fun:")) {
      c.expect("p=");
      auto p = static_cast<std::uint32_t>(c.number());
      c.expect(",");
      c.expect("n=");
      auto n = static_cast<std::uint32_t>(c.number());
      return Ring::functions(p, n);
    }
    if (c.eat("Z")) return Ring::integers();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("ring: ") + e.what(), at);
  }
  c.fail("unknown ring; expected Z, Zn:<n>, prod:[...], GF:<p>/<f> or Fun:p=<p>,n=<k>");
}

std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

RingElem parse_element_at(const Ring& r, std::string_view text, std::size_t base);

RingElem parse_element_at(const Ring& r, std::string_view raw, std::size_t base) {
  std::string_view text = trim(raw);
  base += static_cast<std::size_t>(text.data() - raw.data());
  const auto& d = data_of(r);
  switch (d.kind) {
    case RingKind::Integers:
      try {
        return RingElem(r, RingElem::Ints{parse_bigint(std::string(text))});
      } catch (const ParseError& e) {
        throw ParseError(std::string("element: ") + e.message(), base + e.position());
      }
    case RingKind::Residue: {
      BigInt v;
      try {
        v = parse_bigint(std::string(text));
      } catch (const ParseError& e) {
        throw ParseError(std::string("element: ") + e.message(), base + e.position());
      }
      return r.from_integer(v);
    }
    case RingKind::Product: {
      if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw ParseError("element: product elements are written (a,b,...)", base);
      auto parts = split_top_level(text.substr(1, text.size() - 2));
      if (parts.size() != d.factors.size())
        throw ParseError("element: expected " + std::to_string(d.factors.size()) +
                             " components",
                         base);
      if (!d.finite) {
        RingElem::Ints ints;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          std::size_t off = static_cast<std::size_t>(parts[i].data() - text.data());
          ints.push_back(parse_element_at(d.factors[i], parts[i], base + off).integer());
        }
        return RingElem(r, std::move(ints));
      }
      Digits out(d.radices.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        std::size_t off = static_cast<std::size_t>(parts[i].data() - text.data());
        auto comp = parse_element_at(d.factors[i], parts[i], base + off);
        std::copy(comp.digits().begin(), comp.digits().end(),
                  out.begin() + static_cast<std::ptrdiff_t>(d.factor_offsets[i]));
      }
      return RingElem(r, std::move(out));
    }
    case RingKind::PolyQuotient: {
      auto terms = parse_polynomial(text, 1, base);
      RingElem acc = r.zero();
      const std::size_t deg = d.radices.size();
      Digits xd(deg, 0);
      if (deg >= 2)
        xd[deg - 2] = 1;
      else
        xd[0] = (d.p - d.modulus[0]) % d.p;  // x = -c modulo x + c
      const RingElem x(r, xd);
      for (const auto& t : terms) acc = acc + r.from_integer(t.coeff) * pow(x, t.exps[0]);
      return acc;
    }
    case RingKind::Function: {
      auto terms = parse_polynomial(text, d.nvars, base);
      Digits table(d.npoints, 0);
      for (std::uint64_t j = 0; j < d.npoints; ++j) {
        auto pt = point_at(r, j);
        std::uint64_t v = 0;
        for (const auto& t : terms) {
          std::uint64_t term = to_u64(mod_floor(t.coeff, d.p));
          for (std::uint32_t k = 0; k < d.nvars; ++k)
            for (std::uint32_t e = 0; e < t.exps[k]; ++e) term = term * pt[k] % d.p;
          v = (v + term) % d.p;
        }
        table[j] = static_cast<std::uint32_t>(v);
      }
      return RingElem(r, std::move(table));
    }
  }
  throw Error("unreachable");
}

}  // namespace

// ------------------------------------------------------------------- Ring

Ring Ring::integers() {
  auto d = std::make_shared<Data>();
  d->kind = RingKind::Integers;
  d->int_rank = 1;
  return Ring(d);
}

Ring Ring::residue(std::uint64_t n) {
  if (n < 2) throw PreconditionError("invalid-ring", "Zn requires n >= 2");
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw Unsupported("Zn modulus must fit in 32 bits");
  auto d = std::make_shared<Data>();
  d->kind = RingKind::Residue;
  d->n = n;
  d->finite = true;
  d->radices = {static_cast<std::uint32_t>(n)};
  return Ring(d);
}

Ring Ring::product(std::vector<Ring> factors) {
  if (factors.empty()) throw PreconditionError("invalid-ring", "product needs at least one factor");
  bool all_finite = std::all_of(factors.begin(), factors.end(),
                                [](const Ring& f) { return f.is_finite(); });
  bool all_z = std::all_of(factors.begin(), factors.end(),
                           [](const Ring& f) { return f.kind() == RingKind::Integers; });
  if (!all_finite && !all_z)
    throw Unsupported("product factors must be all finite or all Z");
  auto d = std::make_shared<Data>();
  d->kind = RingKind::Product;
  d->finite = all_finite;
  if (all_finite) {
    for (const auto& f : factors) {
      d->factor_offsets.push_back(d->radices.size());
      const auto& fr = f.radices();
      d->radices.insert(d->radices.end(), fr.begin(), fr.end());
    }
  } else {
    d->int_rank = factors.size();
  }
  d->factors = std::move(factors);
  return Ring(d);
}

Ring Ring::poly_quotient(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (p < 2 || !is_prime(std::uint64_t{p}))
    throw PreconditionError("invalid-ring", "GF characteristic must be prime");
  for (auto& c : modulus) c %= p;
  while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
  if (modulus.size() < 2)
    throw PreconditionError("invalid-ring", "modulus must have degree >= 1");
  if (modulus.back() != 1) throw PreconditionError("invalid-ring", "modulus must be monic");
  auto d = std::make_shared<Data>();
  d->kind = RingKind::PolyQuotient;
  d->p = p;
  d->finite = true;
  d->radices.assign(modulus.size() - 1, p);
  d->modulus = std::move(modulus);
  return Ring(d);
}

Ring Ring::functions(std::uint32_t p, std::uint32_t nvars) {
  if (p < 2 || !is_prime(std::uint64_t{p}))
    throw PreconditionError("invalid-ring", "function ring characteristic must be prime");
  if (nvars < 1) throw PreconditionError("invalid-ring", "function ring needs nvars >= 1");
  std::uint64_t pts = 1;
  for (std::uint32_t i = 0; i < nvars; ++i) {
    pts *= p;
    if (pts > kMaxFunctionPoints)
      throw ResourceLimit("function ring has more than " +
                          std::to_string(kMaxFunctionPoints) + " points");
  }
  auto d = std::make_shared<Data>();
  d->kind = RingKind::Function;
  d->p = p;
  d->nvars = nvars;
  d->npoints = pts;
  d->finite = true;
  d->radices.assign(pts, p);
  return Ring(d);
}

Ring Ring::parse(std::string_view text) {
  Cursor c(text, 0);
  Ring r = parse_ring_at(c);
  c.skip_ws();
  if (!c.done()) c.fail("trailing characters");
  return r;
}

RingKind Ring::kind() const { return d_->kind; }
bool Ring::is_finite() const { return d_->finite; }

std::optional<BigInt> Ring::cardinality() const {
  if (!d_->finite) return std::nullopt;
  BigInt c = 1;
  for (auto r : d_->radices) c *= r;
  return c;
}

std::string Ring::to_string() const {
  switch (d_->kind) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Residue:
      return "Zn:" + std::to_string(d_->n);
    case RingKind::Product: {
      std::string s = "prod:[";
      for (std::size_t i = 0; i < d_->factors.size(); ++i) {
        if (i) s += ",";
        s += d_->factors[i].to_string();
      }
      return s + "]";
    }
    case RingKind::PolyQuotient: {
      std::map<Exponents, BigInt> terms;
      for (std::size_t i = 0; i < d_->modulus.size(); ++i)
        if (d_->modulus[i]) terms[{static_cast<std::uint32_t>(i)}] = d_->modulus[i];
      return "GF:" + std::to_string(d_->p) + "/" + format_polynomial(terms, 1);
    }
    case RingKind::Function:
      return "Fun:p=" + std::to_string(d_->p) + ",n=" + std::to_string(d_->nvars);
  }
  return "?";
}

std::uint64_t Ring::residue_modulus() const {
  if (d_->kind != RingKind::Residue) throw DomainMismatch("not a residue ring");
  return d_->n;
}
const std::vector<Ring>& Ring::factors() const { return d_->factors; }
std::uint32_t Ring::prime() const { return d_->p; }
const std::vector<std::uint32_t>& Ring::poly_modulus() const { return d_->modulus; }
std::uint32_t Ring::degree() const {
  return d_->modulus.empty() ? 0 : static_cast<std::uint32_t>(d_->modulus.size() - 1);
}
std::uint32_t Ring::nvars() const { return d_->nvars; }
std::uint64_t Ring::num_points() const { return d_->npoints; }
std::size_t Ring::integer_rank() const { return d_->int_rank; }
const std::vector<std::uint32_t>& Ring::radices() const { return d_->radices; }
std::size_t Ring::num_digits() const { return d_->radices.size(); }

RingElem Ring::zero() const {
  if (!d_->finite) return RingElem(*this, RingElem::Ints(d_->int_rank, 0));
  return RingElem(*this, Digits(d_->radices.size(), 0));
}

RingElem Ring::one() const {
  if (!d_->finite) return RingElem(*this, RingElem::Ints(d_->int_rank, 1));
  Digits out(d_->radices.size());
  one_digits(*this, out.data());
  return RingElem(*this, std::move(out));
}

RingElem Ring::from_integer(const BigInt& n) const {
  if (!d_->finite) return RingElem(*this, RingElem::Ints(d_->int_rank, n));
  if (d_->kind == RingKind::Residue) {
    return RingElem(*this,
                    Digits{static_cast<std::uint32_t>(to_u64(mod_floor(n, d_->n)))});
  }
  // n * 1 by double-and-add; the characteristic bounds the useful part of n
  // only for Z/n, so reduce via the additive order of 1 elsewhere.
  BigInt k = n < 0 ? BigInt(-n) : n;
  RingElem acc = zero();
  RingElem base = one();
  while (k > 0) {
    if ((k & 1) != 0) acc = acc + base;
    base = base + base;
    k >>= 1;
  }
  return n < 0 ? -acc : acc;
}

RingElem Ring::parse_element(std::string_view text) const {
  return parse_element_at(*this, text, 0);
}

const FiniteRing& Ring::finite() const {
  if (!d_->finite) throw NotEnumerable("ring " + to_string() + " is infinite");
  std::call_once(d_->table_once, [this] {
    try {
      auto card = *cardinality();
      if (card > kMaterializeLimit)
        throw ResourceLimit("ring " + to_string() + " has " + card.str() +
                            " elements; operation tables are limited to " +
                            std::to_string(kMaterializeLimit));
      d_->table = std::make_unique<FiniteRing>(FiniteRing::from_ring(*this));
    } catch (...) {
      d_->table_error = std::current_exception();
    }
  });
  if (d_->table_error) std::rethrow_exception(d_->table_error);
  return *d_->table;
}

std::shared_ptr<const FiniteRing> Ring::finite_ptr() const {
  const FiniteRing& fr = finite();
  return std::shared_ptr<const FiniteRing>(d_, &fr);
}

bool Ring::operator==(const Ring& o) const {
  if (d_ == o.d_) return true;
  const auto &a = *d_, &b = *o.d_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RingKind::Integers:
      return true;
    case RingKind::Residue:
      return a.n == b.n;
    case RingKind::Product:
      return a.factors == b.factors;
    case RingKind::PolyQuotient:
      return a.p == b.p && a.modulus == b.modulus;
    case RingKind::Function:
      return a.p == b.p && a.nvars == b.nvars;
  }
  return false;
}

// --------------------------------------------------------------- RingElem

RingElem::RingElem(Ring ring, Ints ints) : ring_(std::move(ring)), value_(std::move(ints)) {
  if (ring_.is_finite() || std::get<Ints>(value_).size() != ring_.integer_rank())
    throw DomainMismatch("integer tuple does not match ring " + ring_.to_string());
}

RingElem::RingElem(Ring ring, Digits digits)
    : ring_(std::move(ring)), value_(std::move(digits)) {
  const auto& dg = std::get<Digits>(value_);
  const auto& rad = ring_.radices();
  if (!ring_.is_finite() || dg.size() != rad.size())
    throw DomainMismatch("digit string does not match ring " + ring_.to_string());
  for (std::size_t i = 0; i < dg.size(); ++i)
    if (dg[i] >= rad[i]) throw DomainMismatch("digit out of range");
}

const BigInt& RingElem::integer() const {
  if (ring_.kind() != RingKind::Integers) throw DomainMismatch("not an element of Z");
  return ints()[0];
}

std::uint64_t RingElem::index() const {
  const auto& dg = digits();
  const auto& rad = ring_.radices();
  unsigned __int128 idx = 0;
  for (std::size_t i = 0; i < dg.size(); ++i) {
    idx = idx * rad[i] + dg[i];
    if (idx > std::numeric_limits<std::uint64_t>::max())
      throw ResourceLimit("element index exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(idx);
}

bool RingElem::is_zero() const {
  if (is_digits())
    return std::all_of(digits().begin(), digits().end(), [](auto v) { return v == 0; });
  return std::all_of(ints().begin(), ints().end(), [](const BigInt& v) { return v == 0; });
}

std::string RingElem::to_string() const {
  const auto& d = data_of(ring_);
  switch (d.kind) {
    case RingKind::Integers:
      return ints()[0].str();
    case RingKind::Residue:
      return std::to_string(digits()[0]);
    case RingKind::Product: {
      std::string s = "(";
      for (std::size_t f = 0; f < d.factors.size(); ++f) {
        if (f) s += ",";
        if (!d.finite) {
          s += ints()[f].str();
        } else {
          const auto& fr = d.factors[f];
          Digits part(digits().begin() + static_cast<std::ptrdiff_t>(d.factor_offsets[f]),
                      digits().begin() + static_cast<std::ptrdiff_t>(d.factor_offsets[f] +
                                                                     fr.num_digits()));
          s += RingElem(fr, std::move(part)).to_string();
        }
      }
      return s + ")";
    }
    case RingKind::PolyQuotient: {
      std::map<Exponents, BigInt> terms;
      const auto& dg = digits();
      for (std::size_t i = 0; i < dg.size(); ++i)
        if (dg[i]) terms[{static_cast<std::uint32_t>(dg.size() - 1 - i)}] = dg[i];
      return format_polynomial(terms, 1);
    }
    case RingKind::Function:
      return format_polynomial(function_to_polynomial(*this), d.nvars);
  }
  return "?";
}

bool operator==(const RingElem& a, const RingElem& b) {
  return a.ring_ == b.ring_ && a.value_ == b.value_;
}

bool operator<(const RingElem& a, const RingElem& b) {
  if (a.ring_ != b.ring_) throw DomainMismatch("comparing elements of different rings");
  return a.value_ < b.value_;
}

namespace {
void same_ring(const RingElem& a, const RingElem& b) {
  if (a.ring() != b.ring())
    throw DomainMismatch("operands in " + a.ring().to_string() + " and " +
                         b.ring().to_string());
}
}  // namespace

RingElem operator+(const RingElem& a, const RingElem& b) {
  same_ring(a, b);
  if (!a.is_digits()) {
    RingElem::Ints out(a.ints().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.ints()[i] + b.ints()[i];
    return RingElem(a.ring(), std::move(out));
  }
  Digits out(a.digits().size());
  add_digits(a.ring(), a.digits().data(), b.digits().data(), out.data());
  return RingElem(a.ring(), std::move(out));
}

RingElem operator-(const RingElem& a) {
  if (!a.is_digits()) {
    RingElem::Ints out(a.ints().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.ints()[i];
    return RingElem(a.ring(), std::move(out));
  }
  Digits out(a.digits().size());
  neg_digits(a.ring(), a.digits().data(), out.data());
  return RingElem(a.ring(), std::move(out));
}

RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

RingElem operator*(const RingElem& a, const RingElem& b) {
  same_ring(a, b);
  if (!a.is_digits()) {
    RingElem::Ints out(a.ints().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.ints()[i] * b.ints()[i];
    return RingElem(a.ring(), std::move(out));
  }
  Digits out(a.digits().size());
  mul_digits(a.ring(), a.digits().data(), b.digits().data(), out.data());
  return RingElem(a.ring(), std::move(out));
}

RingElem pow(const RingElem& a, std::uint64_t e) {
  RingElem acc = a.ring().one();
  RingElem base = a;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

RingElem element_at(const Ring& ring, std::uint64_t index) {
  if (!ring.is_finite()) throw NotEnumerable("ring " + ring.to_string() + " is infinite");
  const auto& rad = ring.radices();
  Digits dg(rad.size());
  for (std::size_t i = rad.size(); i-- > 0;) {
    dg[i] = static_cast<std::uint32_t>(index % rad[i]);
    index /= rad[i];
  }
  if (index != 0) throw DomainMismatch("element index out of range");
  return RingElem(ring, std::move(dg));
}

std::vector<RingElem> enumerate_elements(const Ring& ring) {
  if (!ring.is_finite())
    throw NotEnumerable("ring " + ring.to_string() + " is infinite and cannot be enumerated");
  BigInt card = *ring.cardinality();
  if (card > (1u << 24)) throw ResourceLimit("ring " + ring.to_string() + " is too large to enumerate");
  auto n = card.convert_to<std::uint64_t>();
  std::vector<RingElem> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(ring, i));
  return out;
}

std::vector<std::uint32_t> point_at(const Ring& fun_ring, std::uint64_t j) {
  if (fun_ring.kind() != RingKind::Function) throw DomainMismatch("not a function ring");
  std::uint32_t p = fun_ring.prime(), n = fun_ring.nvars();
  std::vector<std::uint32_t> pt(n);
  for (std::uint32_t k = n; k-- > 0;) {
    pt[k] = static_cast<std::uint32_t>(j % p);
    j /= p;
  }
  return pt;
}

std::uint64_t point_index(const Ring& fun_ring, const std::vector<std::uint32_t>& pt) {
  if (fun_ring.kind() != RingKind::Function) throw DomainMismatch("not a function ring");
  if (pt.size() != fun_ring.nvars()) throw DomainMismatch("point has wrong dimension");
  std::uint64_t j = 0;
  for (auto c : pt) {
    if (c >= fun_ring.prime()) throw DomainMismatch("point coordinate out of range");
    j = j * fun_ring.prime() + c;
  }
  return j;
}

std::map<Exponents, BigInt> function_to_polynomial(const RingElem& f) {
  const Ring& r = f.ring();
  if (r.kind() != RingKind::Function) throw DomainMismatch("not a function-ring element");
  const std::uint64_t p = r.prime();
  const std::uint32_t n = r.nvars();
  // Inverse of the Vandermonde matrix V[t][e] = t^e over F_p.
  std::vector<std::vector<std::uint64_t>> v(p, std::vector<std::uint64_t>(2 * p, 0));
  for (std::uint64_t t = 0; t < p; ++t) {
    std::uint64_t pw = 1;
    for (std::uint64_t e = 0; e < p; ++e) {
      v[t][e] = pw;
      pw = pw * t % p;
    }
    v[t][p + t] = 1;
  }
  auto inv = [p](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t col = 0; col < p; ++col) {
    std::uint64_t piv = col;
    while (v[piv][col] == 0) ++piv;
    std::swap(v[piv], v[col]);
    std::uint64_t s = inv(v[col][col]);
    for (auto& x : v[col]) x = x * s % p;
    for (std::uint64_t row = 0; row < p; ++row) {
      if (row == col || v[row][col] == 0) continue;
      std::uint64_t fct = v[row][col];
      for (std::uint64_t k = 0; k < 2 * p; ++k)
        v[row][k] = (v[row][k] + (p - fct) * v[col][k]) % p;
    }
  }
  // coeff[e] = sum_t Vinv[e][t] * value[t], applied along each axis.
  std::vector<std::uint64_t> data(f.digits().begin(), f.digits().end());
  const std::uint64_t total = data.size();
  std::uint64_t stride = 1;
  for (std::uint32_t axis = n; axis-- > 0;) {
    std::vector<std::uint64_t> next(total, 0);
    for (std::uint64_t base = 0; base < total; ++base) {
      std::uint64_t digit = (base / stride) % p;
      if (digit != 0) continue;
      for (std::uint64_t e = 0; e < p; ++e) {
        std::uint64_t acc = 0;
        for (std::uint64_t t = 0; t < p; ++t)
          acc = (acc + v[e][p + t] * data[base + t * stride]) % p;
        next[base + e * stride] = acc;
      }
    }
    data.swap(next);
    stride *= p;
  }
  std::map<Exponents, BigInt> out;
  for (std::uint64_t j = 0; j < total; ++j) {
    if (data[j] == 0) continue;
    auto pt = point_at(r, j);
    out[Exponents(pt.begin(), pt.end())] = data[j];
  }
  return out;
}

}  // namespace approx
