#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace approx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Nonnegative gcd; gcd(0, 0) = 0.
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
BigInt abs(const BigInt& a);

/// Least nonnegative residue of a modulo n (n > 0).
BigInt mod_floor(const BigInt& a, const BigInt& n);

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);

/// Distinct prime factors of |n| in increasing order (trial division).
std::vector<BigInt> prime_factors(const BigInt& n);

/// Product of the distinct primes dividing n; radical(0) = 0.
BigInt radical(const BigInt& n);

std::uint64_t to_u64(const BigInt& n);
std::int64_t to_i64(const BigInt& n);
std::string to_string(const BigInt& n);
BigInt parse_bigint(const std::string& text);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace approx
