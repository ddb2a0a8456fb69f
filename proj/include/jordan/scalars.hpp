#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jordan {

class Scalar;

/// Exact coefficient domain: the rationals or a prime field F_p.
class Field {
 public:
  static Field rational() { return Field(0); }
  /// Throws NonPrimeModulus unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return p_ == 0; }
  bool is_prime() const noexcept { return p_ != 0; }
  /// Prime modulus; 0 for the rationals.
  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  /// Over F_p the fraction n/d maps to n * d^-1; d must be a unit there.
  Scalar from_rational(const mpq_class& q) const;
  /// Parses "n", "n/d" (rationals, reduced, d > 0) or "r" with 0 <= r < p.
  Scalar parse(std::string_view text) const;

  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

/// True iff k*x = 0 forces x = 0 for every x, i.e. char(f) does not divide k.
bool is_k_torsion_free(const Field& f, std::uint64_t k);

/// An exact field element in canonical form (reduced fraction or residue 0..p-1).
class Scalar {
 public:
  Scalar() = default;  // rational zero

  const Field& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue for prime fields.
  std::uint32_t residue() const noexcept { return residue_; }
  const mpq_class& rational() const noexcept { return q_; }

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Residue order for F_p, numeric order for Q. Used for lexicographic sorting.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  friend class Field;
  void check_same_field(const Scalar& o) const;

  Field field_ = Field::rational();
  std::uint32_t residue_ = 0;
  mpq_class q_;
};

}  // namespace jordan
