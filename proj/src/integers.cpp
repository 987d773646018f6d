#include "approx/integers.hpp"

#include "approx/errors.hpp"

#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

namespace approx {

BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= BigInt(std::numeric_limits<std::uint64_t>::max()))
    return is_prime(n.convert_to<std::uint64_t>());
  return boost::multiprecision::miller_rabin_test(n, 40);
}

std::vector<BigInt> prime_factors(const BigInt& n) {
  std::vector<BigInt> out;
  BigInt m = abs(n);
  if (m < 2) return out;
  for (BigInt d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

BigInt radical(const BigInt& n) {
  if (n == 0) return 0;
  BigInt r = 1;
  for (const auto& p : prime_factors(n)) r *= p;
  return r;
}

std::uint64_t to_u64(const BigInt& n) {
  if (n < 0 || n > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw ResourceLimit("integer " + to_string(n) + " does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

std::int64_t to_i64(const BigInt& n) {
  if (n < BigInt(std::numeric_limits<std::int64_t>::min()) ||
      n > BigInt(std::numeric_limits<std::int64_t>::max()))
    throw ResourceLimit("integer " + to_string(n) + " does not fit in 64 bits");
  return n.convert_to<std::int64_t>();
}

std::string to_string(const BigInt& n) { return n.str(); }

BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer", 0);
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw ParseError("sign without digits", i);
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9')
      throw ParseError("invalid digit in integer '" + text + "'", j);
  return BigInt(text);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  return boost::integer::gcd(a, b);
}

}  // namespace approx
