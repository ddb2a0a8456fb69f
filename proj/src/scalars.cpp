#include "jordan/scalars.hpp"

#include <charconv>
#include <limits>

#include "jordan/error.hpp"

namespace jordan {

namespace {

bool is_prime_number(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

bool is_decimal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::CharacteristicUnsupported: return "CharacteristicUnsupported";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::ModeUnsupported: return "ModeUnsupported";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::DecompositionIncomplete: return "DecompositionIncomplete";
    case ErrorCode::CarrierInfinite: return "CarrierInfinite";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoncommutativeDomain: return "NoncommutativeDomain";
    case ErrorCode::NotDerivation: return "NotDerivation";
    case ErrorCode::DerivationOfIdempotentNotHalf: return "DerivationOfIdempotentNotHalf";
    case ErrorCode::TorsionViolation: return "TorsionViolation";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::CarrierSizeMismatch: return "CarrierSizeMismatch";
    case ErrorCode::InvalidMapTable: return "InvalidMapTable";
  }
  return "Unknown";
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime_number(p)) {
    throw Error(ErrorCode::NonPrimeModulus, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  return Field(static_cast<std::uint32_t>(p));
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t v) const {
  Scalar s;
  s.field_ = *this;
  if (is_prime()) {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    s.residue_ = static_cast<std::uint32_t>(r);
  } else {
    s.q_ = mpq_class(static_cast<long>(v));
  }
  return s;
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (is_rational()) {
    Scalar s;
    s.field_ = *this;
    s.q_ = q;
    s.q_.canonicalize();
    return s;
  }
  auto reduce = [&](const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return from_int(static_cast<std::int64_t>(r.get_ui()));
  };
  return reduce(q.get_num()) / reduce(q.get_den());
}

Scalar Field::parse(std::string_view text) const {
  auto fail = [&](const char* why) {
    return Error(ErrorCode::ParseError, "bad scalar '" + std::string(text) + "' over " + name() + ": " + why);
  };
  if (is_prime()) {
    if (!is_decimal(text, false)) throw fail("expected a decimal residue");
    std::uint64_t r = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
    if (ec != std::errc() || ptr != text.data() + text.size() || r >= p_) throw fail("residue out of range");
    Scalar s;
    s.field_ = *this;
    s.residue_ = static_cast<std::uint32_t>(r);
    return s;
  }
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_decimal(num, true)) throw fail("expected n or n/d");
  mpz_class n{std::string(num)};
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!is_decimal(den, false)) throw fail("expected a positive denominator");
    d = mpz_class(std::string(den));
    if (d == 0) throw fail("zero denominator");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw fail("fraction not in lowest terms");
    if (d == 1) throw fail("denominator 1 must be omitted");
  }
  Scalar s;
  s.field_ = *this;
  s.q_ = mpq_class(n, d);
  s.q_.canonicalize();
  return s;
}

std::string Field::name() const {
  return is_rational() ? "Q" : "F" + std::to_string(p_);
}

bool is_k_torsion_free(const Field& f, std::uint64_t k) {
  if (f.is_rational()) return true;
  return k % f.characteristic() != 0;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_) {
    throw Error(ErrorCode::FieldMismatch, "cannot combine " + field_.name() + " and " + o.field_.name());
  }
}

bool Scalar::is_zero() const { return field_.is_prime() ? residue_ == 0 : sgn(q_) == 0; }
bool Scalar::is_one() const { return field_.is_prime() ? residue_ == 1 : q_ == 1; }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_prime()) {
    r.residue_ = residue_ == 0 ? 0 : field_.modulus() - residue_;
  } else {
    r.q_ = -q_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  Scalar r = *this;
  if (field_.is_prime()) {
    r.residue_ = mod_pow(residue_, field_.modulus() - 2, field_.modulus());
  } else {
    r.q_ = 1 / q_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    residue_ = static_cast<std::uint32_t>((std::uint64_t{residue_} + o.residue_) % field_.modulus());
  } else {
    q_ += o.q_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    residue_ = static_cast<std::uint32_t>(std::uint64_t{residue_} * o.residue_ % field_.modulus());
  } else {
    q_ *= o.q_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_prime() ? a.residue_ == b.residue_ : a.q_ == b.q_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (a.field_.is_prime()) return a.residue_ <=> b.residue_;
  int c = cmp(a.q_, b.q_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue_);
  return q_.get_str();
}

}  // namespace jordan
