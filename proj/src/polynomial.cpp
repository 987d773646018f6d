#include "approx/polynomial.hpp"

#include "approx/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace approx {
namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::uint32_t nvars, std::size_t base)
      : s_(text), nvars_(nvars), base_(base) {}

  std::vector<Term> run() {
    std::map<Exponents, BigInt> acc;
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Term t = term();
      acc[t.exps] += sign * t.coeff;
      skip_ws();
      if (pos_ == s_.size()) break;
    }
    std::vector<Term> out;
    for (auto& [e, c] : acc)
      if (c != 0) out.push_back({c, e});
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial: " + what, base_ + pos_);
  }

  BigInt number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  Term term() {
    Term t{1, Exponents(nvars_, 0)};
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coeff = number();
      any = true;
    }
    while (true) {
      skip_ws();
      if (peek() == '*') {
        if (!any) fail("'*' without left operand");
        ++pos_;
        skip_ws();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          t.coeff *= number();
          continue;
        }
        if (peek() != 'x') fail("expected variable after '*'");
      }
      if (peek() != 'x') break;
      ++pos_;
      std::uint32_t var = 0;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        BigInt idx = number();
        if (idx < 1 || idx > nvars_) fail("variable index out of range");
        var = idx.convert_to<std::uint32_t>() - 1;
      } else if (nvars_ != 1) {
        fail("bare 'x' is only valid for univariate polynomials");
      }
      std::uint32_t exp = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        BigInt e = number();
        if (e > 1'000'000) fail("exponent too large");
        exp = e.convert_to<std::uint32_t>();
      }
      t.exps[var] += exp;
      any = true;
    }
    if (!any) fail("expected a term");
    return t;
  }

  std::string_view s_;
  std::uint32_t nvars_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

}  // namespace

std::vector<Term> parse_polynomial(std::string_view text, std::uint32_t nvars,
                                   std::size_t base_offset) {
  return PolyParser(text, nvars, base_offset).run();
}

std::string format_polynomial(const std::map<Exponents, BigInt>& terms,
                              std::uint32_t nvars) {
  std::vector<std::pair<Exponents, BigInt>> items;
  for (const auto& [e, c] : terms)
    if (c != 0) items.emplace_back(e, c);
  if (items.empty()) return "0";
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    auto da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : items) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    first = false;
    std::string mono;
    for (std::uint32_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += nvars == 1 ? "x" : "x" + std::to_string(v + 1);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += mono;
    }
  }
  return out;
}

IntPoly IntPoly::constant(std::uint32_t nvars, const BigInt& c) {
  IntPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

IntPoly IntPoly::variable(std::uint32_t nvars, std::uint32_t index) {
  IntPoly p(nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

IntPoly IntPoly::parse(std::string_view text, std::uint32_t nvars) {
  IntPoly p(nvars);
  for (const auto& t : parse_polynomial(text, nvars)) p.add_term(t.exps, t.coeff);
  return p;
}

void IntPoly::add_term(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  BigInt& slot = terms_[e];
  slot += c;
  if (slot == 0) terms_.erase(e);
}

BigInt IntPoly::eval(const std::vector<BigInt>& point) const {
  if (point.size() != nvars_)
    throw DomainMismatch("point dimension does not match polynomial arity");
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) {
    BigInt v = c;
    for (std::uint32_t i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  if (o.nvars_ != nvars_) throw DomainMismatch("polynomial arity mismatch");
  IntPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  if (o.nvars_ != nvars_) throw DomainMismatch("polynomial arity mismatch");
  IntPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (o.nvars_ != nvars_) throw DomainMismatch("polynomial arity mismatch");
  IntPoly r(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(nvars_);
      for (std::uint32_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

}  // namespace approx
