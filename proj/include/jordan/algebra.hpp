#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jordan/linalg.hpp"
#include "jordan/scalars.hpp"

namespace jordan {

class Algebra;
class Element;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// One nonzero structure constant: basis_i * basis_j contributes c * basis_k.
struct ProductEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Scalar c;
};

/// Finite-dimensional algebra given by a dense structure-constant tensor.
/// Instances are immutable and always held through AlgebraPtr.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  /// Throws ParseError on dim 0, duplicate basis names, duplicate or
  /// out-of-range entries.
  static AlgebraPtr create(std::string name, Field field, std::vector<std::string> basis,
                           std::span<const ProductEntry> products);

  const std::string& name() const noexcept { return name_; }
  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& basis_names() const noexcept { return basis_; }

  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * dim_ + j) * dim_ + k];
  }
  /// Nonzero entries in (i, j, k) order.
  std::vector<ProductEntry> products() const;

  /// Same field, dimension and table. Names are not compared.
  bool same_structure(const Algebra& other) const;

  Element element(Vector coords) const;
  Element zero() const;
  Element basis(std::size_t i) const;
  /// Parses "c1,c2,...,cd" in the scalar text format of the field.
  Element parse_element(std::string_view text) const;

  /// p^dim for prime fields, nullopt for the rationals (or on overflow).
  std::optional<std::size_t> carrier_size() const;

 private:
  Algebra(std::string name, Field field, std::vector<std::string> basis, std::vector<Scalar> table);

  std::string name_;
  Field field_;
  std::size_t dim_;
  std::vector<std::string> basis_;
  std::vector<Scalar> table_;
};

class Element {
 public:
  Element(AlgebraPtr algebra, Vector coords);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& s, const Element& x);

  friend bool operator==(const Element& a, const Element& b);
  /// Lexicographic order on coordinates.
  friend bool operator<(const Element& a, const Element& b);

  /// "c1,c2,...,cd"
  std::string to_string() const;
  /// Linear combination of basis names, e.g. "1/2*e11 + e00"; "0" for zero.
  std::string pretty() const;

 private:
  AlgebraPtr algebra_;
  Vector coords_;
};

/// Throws AlgebraMismatch unless both algebras share a structure.
void require_same_algebra(const Algebra& a, const Algebra& b);

Element multiply(const Algebra& a, const Element& x, const Element& y);
/// (xy)z - x(yz)
Element associator(const Algebra& a, const Element& x, const Element& y, const Element& z);
/// xy - yx
Element commutator(const Algebra& a, const Element& x, const Element& y);

/// [b_i, b_j] = 0 for all basis pairs.
bool is_commutative(const Algebra& a);

enum class JordanRoute { linearized, exhaustive };

struct IdentityReport {
  bool commutative = true;
  bool associative = true;
  bool flexible = true;
  bool jordan = true;
  JordanRoute route = JordanRoute::linearized;
  // Elementwise falsifying tuples: (x, y) for commutativity, (x, y, z) for the
  // associator, (x, y) with (x, y, x) != 0, and (x, y) with (x^2, y, x) != 0
  // or [x, y] != 0 for the Jordan identity.
  std::optional<std::vector<Element>> commutative_witness;
  std::optional<std::vector<Element>> associative_witness;
  std::optional<std::vector<Element>> flexible_witness;
  std::optional<std::vector<Element>> jordan_witness;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Throws CharacteristicUnsupported in characteristic 2, and
/// EnumerationTooLarge when characteristic 3 forces element enumeration over
/// a carrier larger than the cap.
IdentityReport identity_report(const Algebra& a, std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Exhaustive elementwise Jordan-identity check over a finite carrier: every
/// x in the carrier against every basis y. Ignores commutativity.
std::optional<std::vector<Element>> jordan_identity_counterexample_exhaustive(
    const Algebra& a, std::size_t enumeration_cap = kDefaultEnumerationCap);

enum class Side { left, right };

struct MultOperator {
  Matrix matrix;
  Side side;
  Element generator;
};

/// Left and right multiplication operators: columns are coords(a*b_j) and coords(b_j*a).
std::pair<MultOperator, MultOperator> mult_operators(const Algebra& a, const Element& x);

std::optional<Element> identity_element(const Algebra& a);

/// Basis (e11, e10, e01, e00) with e_ij e_kl = delta_jk e_il.
AlgebraPtr matrix_units_algebra(const Field& f);
/// Symmetrised product x.y = (xy + yx)/2. Throws CharacteristicUnsupported in char 2.
AlgebraPtr jordanify(const Algebra& a);
/// All products zero.
AlgebraPtr zero_algebra(const Field& f, std::size_t dim);
/// F^dim with the componentwise product (orthogonal idempotent basis).
AlgebraPtr diagonal_algebra(const Field& f, std::size_t dim);

}  // namespace jordan
