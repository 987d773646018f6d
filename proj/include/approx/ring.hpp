#pragma once

#include "approx/integers.hpp"
#include "approx/polynomial.hpp"

#include <map>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace approx {

class FiniteRing;
class RingElem;

enum class RingKind { Integers, Residue, Product, PolyQuotient, Function };

// Finite rings larger than this are never materialized into operation
// tables; operations that need tables throw ResourceLimit.
inline constexpr std::uint64_t kMaterializeLimit = 1024;

/// A finitely presented commutative ring with unity.
///
/// Variants:
///   - `Z`                 the integers (arbitrary precision)
///   - `Zn:<n>`            Z/n, n >= 2
///   - `prod:[R1,...]`     direct product; either every factor is finite or
///                         every factor is `Z` (giving Z^k)
///   - `GF:<p>/<f>`        F_p[x]/(f) for a monic f of degree >= 1
///   - `Fun:p=<p>,n=<k>`   F_p[x1..xk]/(xi^p - xi), the functions F_p^k -> F_p
///
/// Values are immutable and cheap to copy. Equality is structural.
///
/// Elements of finite rings are encoded as mixed-radix digit strings
/// (most significant first); lexicographic order on digits is the canonical
/// element order, and the digit string read as a number is the element index.
class Ring {
 public:
  static Ring integers();
  static Ring residue(std::uint64_t n);
  static Ring product(std::vector<Ring> factors);
  /// `modulus` holds coefficients lowest degree first and must be monic.
  static Ring poly_quotient(std::uint32_t p, std::vector<std::uint32_t> modulus);
  static Ring functions(std::uint32_t p, std::uint32_t nvars);
  static Ring parse(std::string_view text);

  RingKind kind() const;
  bool is_finite() const;
  /// nullopt for infinite rings.
  std::optional<BigInt> cardinality() const;
  std::string to_string() const;

  std::uint64_t residue_modulus() const;
  const std::vector<Ring>& factors() const;
  std::uint32_t prime() const;
  /// Lowest degree first, monic.
  const std::vector<std::uint32_t>& poly_modulus() const;
  std::uint32_t degree() const;
  std::uint32_t nvars() const;
  /// p^nvars for function rings.
  std::uint64_t num_points() const;
  /// Number of integer coordinates for Z (1) and Z^k (k).
  std::size_t integer_rank() const;

  const std::vector<std::uint32_t>& radices() const;
  std::size_t num_digits() const;

  RingElem zero() const;
  RingElem one() const;
  /// The image of n under the unique unital map Z -> R.
  RingElem from_integer(const BigInt& n) const;
  RingElem parse_element(std::string_view text) const;

  /// Operation tables over element indices. Built once per ring and shared;
  /// throws NotEnumerable for infinite rings and ResourceLimit past
  /// kMaterializeLimit.
  const FiniteRing& finite() const;
  /// Same tables, sharing ownership with this ring.
  std::shared_ptr<const FiniteRing> finite_ptr() const;

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }

  struct Data;
  /// Opaque outside ring.cpp.
  const Data& data() const { return *d_; }

 private:
  explicit Ring(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
  friend class RingElem;
};

class RingElem {
 public:
  using Ints = std::vector<BigInt>;
  using Digits = std::vector<std::uint32_t>;

  RingElem(Ring ring, Ints ints);
  RingElem(Ring ring, Digits digits);

  const Ring& ring() const { return ring_; }
  bool is_digits() const { return std::holds_alternative<Digits>(value_); }
  const Digits& digits() const { return std::get<Digits>(value_); }
  const Ints& ints() const { return std::get<Ints>(value_); }
  /// Integer value for elements of Z.
  const BigInt& integer() const;

  /// Position in the canonical enumeration (finite rings only).
  std::uint64_t index() const;
  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const RingElem& a, const RingElem& b);
  friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }
  /// Canonical order within one ring.
  friend bool operator<(const RingElem& a, const RingElem& b);

 private:
  Ring ring_;
  std::variant<Ints, Digits> value_;
};

RingElem operator+(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a);
RingElem operator*(const RingElem& a, const RingElem& b);
RingElem pow(const RingElem& a, std::uint64_t e);

/// The element with the given canonical index.
RingElem element_at(const Ring& ring, std::uint64_t index);

/// All elements in canonical order. NotEnumerable for infinite rings;
/// ResourceLimit above 2^24 elements.
std::vector<RingElem> enumerate_elements(const Ring& ring);

/// Function-ring helpers: the point with index j (x1 most significant) and
/// the value of an element at a point.
std::vector<std::uint32_t> point_at(const Ring& fun_ring, std::uint64_t j);
std::uint64_t point_index(const Ring& fun_ring, const std::vector<std::uint32_t>& pt);

/// Reduced polynomial (exponents < p) of a function-ring element, by
/// per-variable inverse Vandermonde interpolation.
std::map<Exponents, BigInt> function_to_polynomial(const RingElem& f);

}  // namespace approx
