#pragma once

#include "approx/integers.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace approx {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  BigInt coeff;
  Exponents exps;
};

// Parses `x^4+x^3+1`, `2*x1*x2 - x1`, `3x^2`. Variables are `x` (only when
// nvars == 1) or `x1`..`x<nvars>`. Like terms are merged; coefficients are
// left unreduced.
std::vector<Term> parse_polynomial(std::string_view text, std::uint32_t nvars,
                                   std::size_t base_offset = 0);

// Renders terms in descending (total degree, exponent tuple) order. With
// nvars == 1 the variable prints as `x`.
std::string format_polynomial(const std::map<Exponents, BigInt>& terms,
                              std::uint32_t nvars);

/// Multivariate polynomial with integer coefficients. Used by tolerance
/// closures, which evaluate at integer points.
class IntPoly {
 public:
  explicit IntPoly(std::uint32_t nvars = 1) : nvars_(nvars) {}
  static IntPoly constant(std::uint32_t nvars, const BigInt& c);
  static IntPoly variable(std::uint32_t nvars, std::uint32_t index);
  static IntPoly parse(std::string_view text, std::uint32_t nvars);

  std::uint32_t nvars() const { return nvars_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigInt eval(const std::vector<BigInt>& point) const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const = default;

  std::string to_string() const { return format_polynomial(terms_, nvars_); }

 private:
  void add_term(const Exponents& e, const BigInt& c);

  std::uint32_t nvars_;
  std::map<Exponents, BigInt> terms_;
};

}  // namespace approx
