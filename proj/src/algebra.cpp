#include "jordan/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "jordan/error.hpp"

namespace jordan {

Algebra::Algebra(std::string name, Field field, std::vector<std::string> basis, std::vector<Scalar> table)
    : name_(std::move(name)), field_(field), dim_(basis.size()), basis_(std::move(basis)), table_(std::move(table)) {}

AlgebraPtr Algebra::create(std::string name, Field field, std::vector<std::string> basis,
                           std::span<const ProductEntry> products) {
  const std::size_t d = basis.size();
  if (d == 0) throw Error(ErrorCode::ParseError, "algebra dimension must be positive");
  std::set<std::string> names(basis.begin(), basis.end());
  if (names.size() != d) throw Error(ErrorCode::ParseError, "basis names must be distinct");

  std::vector<Scalar> table(d * d * d, field.zero());
  std::vector<bool> seen(d * d * d, false);
  for (const auto& e : products) {
    if (e.i >= d || e.j >= d || e.k >= d) {
      throw Error(ErrorCode::ParseError, "product index out of range: (" + std::to_string(e.i) + "," +
                                             std::to_string(e.j) + "," + std::to_string(e.k) + ")");
    }
    if (e.c.field() != field) throw Error(ErrorCode::FieldMismatch, "structure constant over the wrong field");
    const std::size_t at = (e.i * d + e.j) * d + e.k;
    if (seen[at]) {
      throw Error(ErrorCode::ParseError, "duplicate product entry (" + std::to_string(e.i) + "," +
                                             std::to_string(e.j) + "," + std::to_string(e.k) + ")");
    }
    seen[at] = true;
    table[at] = e.c;
  }
  return AlgebraPtr(new Algebra(std::move(name), field, std::move(basis), std::move(table)));
}

std::vector<ProductEntry> Algebra::products() const {
  std::vector<ProductEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (!constant(i, j, k).is_zero()) out.push_back({i, j, k, constant(i, j, k)});
  return out;
}

bool Algebra::same_structure(const Algebra& other) const {
  if (this == &other) return true;
  return field_ == other.field_ && dim_ == other.dim_ && table_ == other.table_;
}

Element Algebra::element(Vector coords) const {
  if (coords.size() != dim_) throw Error(ErrorCode::ArityMismatch, "coordinate vector has wrong length");
  for (const auto& c : coords) {
    if (c.field() != field_) throw Error(ErrorCode::FieldMismatch, "coordinate over the wrong field");
  }
  return Element(shared_from_this(), std::move(coords));
}

Element Algebra::zero() const { return element(Vector(dim_, field_.zero())); }

Element Algebra::basis(std::size_t i) const {
  Vector v(dim_, field_.zero());
  v.at(i) = field_.one();
  return element(std::move(v));
}

Element Algebra::parse_element(std::string_view text) const {
  Vector coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    coords.push_back(field_.parse(part));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coords.size() != dim_) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(dim_) + " coordinates, got " +
                                           std::to_string(coords.size()) + " in '" + std::string(text) + "'");
  }
  return element(std::move(coords));
}

std::optional<std::size_t> Algebra::carrier_size() const {
  if (field_.is_rational()) return std::nullopt;
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (n > (std::size_t{1} << 40) / field_.modulus()) return std::nullopt;
    n *= field_.modulus();
  }
  return n;
}

Element::Element(AlgebraPtr algebra, Vector coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {}

bool Element::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Element& Element::operator+=(const Element& o) {
  require_same_algebra(*algebra_, *o.algebra_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Element& Element::operator-=(const Element& o) { return *this += -o; }

Element operator*(const Scalar& s, const Element& x) {
  Element r = x;
  for (auto& c : r.coords_) c *= s;
  return r;
}

bool operator==(const Element& a, const Element& b) {
  return a.algebra_->same_structure(*b.algebra_) && a.coords_ == b.coords_;
}

bool operator<(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
}

std::string Element::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ',';
    out += coords_[i].to_string();
  }
  return out;
}

std::string Element::pretty() const {
  std::string out;
  const auto& names = algebra_->basis_names();
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!coords_[i].is_one()) out += coords_[i].to_string() + "*";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

void require_same_algebra(const Algebra& a, const Algebra& b) {
  if (!a.same_structure(b)) {
    throw Error(ErrorCode::AlgebraMismatch, "elements of '" + a.name() + "' and '" + b.name() + "' cannot be combined");
  }
}

Element multiply(const Algebra& a, const Element& x, const Element& y) {
  require_same_algebra(a, *x.algebra());
  require_same_algebra(a, *y.algebra());
  const std::size_t d = a.dim();
  Vector out(d, a.field().zero());
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar& c = a.constant(i, j, k);
        if (!c.is_zero()) out[k] += xy * c;
      }
    }
  }
  return a.element(std::move(out));
}

Element associator(const Algebra& a, const Element& x, const Element& y, const Element& z) {
  return multiply(a, multiply(a, x, y), z) - multiply(a, x, multiply(a, y, z));
}

Element commutator(const Algebra& a, const Element& x, const Element& y) {
  return multiply(a, x, y) - multiply(a, y, x);
}

bool is_commutative(const Algebra& a) {
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (a.constant(i, j, k) != a.constant(j, i, k)) return false;
  return true;
}

namespace {

Element jordan_expression(const Algebra& a, const Element& x, const Element& y) {
  return associator(a, multiply(a, x, x), y, x);
}

// Subset sums of the given elements, nonempty subsets only.
std::vector<Element> subset_sums(const std::vector<Element>& xs) {
  std::vector<Element> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << xs.size()); ++mask) {
    Element s = xs.front().algebra()->zero();
    for (std::size_t b = 0; b < xs.size(); ++b)
      if (mask & (std::size_t{1} << b)) s += xs[b];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::optional<std::vector<Element>> jordan_identity_counterexample_exhaustive(const Algebra& a,
                                                                                std::size_t enumeration_cap) {
  const auto size = a.carrier_size();
  if (!size) throw Error(ErrorCode::CarrierInfinite, "exhaustive Jordan check needs a finite field");
  if (*size > enumeration_cap) {
    throw Error(ErrorCode::EnumerationTooLarge, "carrier of " + std::to_string(*size) + " elements exceeds the cap");
  }
  const std::size_t d = a.dim();
  const std::uint32_t p = a.field().modulus();
  std::vector<std::uint32_t> digits(d, 0);
  for (std::size_t n = 0; n < *size; ++n) {
    Vector coords;
    for (auto v : digits) coords.push_back(a.field().from_int(v));
    const Element x = a.element(std::move(coords));
    const Element x2 = multiply(a, x, x);
    // (x^2, y, x) is linear in y, so basis elements y suffice.
    for (std::size_t j = 0; j < d; ++j) {
      const Element y = a.basis(j);
      if (!associator(a, x2, y, x).is_zero()) return std::vector<Element>{x, y};
    }
    for (std::size_t i = d; i-- > 0;) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return std::nullopt;
}

IdentityReport identity_report(const Algebra& a, std::size_t enumeration_cap) {
  if (a.field().characteristic() == 2) {
    throw Error(ErrorCode::CharacteristicUnsupported, "identity checks are not supported in characteristic 2");
  }
  const std::size_t d = a.dim();
  IdentityReport r;

  for (std::size_t i = 0; i < d && r.commutative; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (!commutator(a, a.basis(i), a.basis(j)).is_zero()) {
        r.commutative = false;
        r.commutative_witness = std::vector<Element>{a.basis(i), a.basis(j)};
        break;
      }
    }
  }

  for (std::size_t i = 0; i < d && r.associative; ++i)
    for (std::size_t j = 0; j < d && r.associative; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (!associator(a, a.basis(i), a.basis(j), a.basis(k)).is_zero()) {
          r.associative = false;
          r.associative_witness = std::vector<Element>{a.basis(i), a.basis(j), a.basis(k)};
          break;
        }
      }

  // Linearisation of (x, y, x): (x1, y, x2) + (x2, y, x1).
  for (std::size_t i = 0; i < d && r.flexible; ++i)
    for (std::size_t k = i; k < d && r.flexible; ++k)
      for (std::size_t j = 0; j < d; ++j) {
        const Element x1 = a.basis(i), x2 = a.basis(k), y = a.basis(j);
        if ((associator(a, x1, y, x2) + associator(a, x2, y, x1)).is_zero()) continue;
        r.flexible = false;
        for (const Element& x : subset_sums({x1, x2})) {
          if (!associator(a, x, y, x).is_zero()) {
            r.flexible_witness = std::vector<Element>{x, y};
            break;
          }
        }
        break;
      }

  if (!r.commutative) {
    r.jordan = false;
    r.jordan_witness = r.commutative_witness;
    r.route = a.field().characteristic() == 3 ? JordanRoute::exhaustive : JordanRoute::linearized;
    return r;
  }

  if (a.field().characteristic() == 3) {
    r.route = JordanRoute::exhaustive;
    r.jordan_witness = jordan_identity_counterexample_exhaustive(a, enumeration_cap);
    r.jordan = !r.jordan_witness.has_value();
    return r;
  }

  // Full linearisation of (x^2, y, x): sum over orderings of (x_a x_b, y, x_c).
  // It is symmetric in x1, x2, x3, so multisets i <= j <= k suffice.
  r.route = JordanRoute::linearized;
  for (std::size_t i = 0; i < d && r.jordan; ++i)
    for (std::size_t j = i; j < d && r.jordan; ++j)
      for (std::size_t k = j; k < d && r.jordan; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const std::vector<Element> xs{a.basis(i), a.basis(j), a.basis(k)};
          const Element y = a.basis(l);
          Element sum = a.zero();
          const std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
          for (const auto& p : perms) sum += associator(a, multiply(a, xs[p[0]], xs[p[1]]), y, xs[p[2]]);
          if (sum.is_zero()) continue;
          r.jordan = false;
          // Polarisation: some subset sum x of the three basis vectors has (x^2, y, x) != 0.
          for (const Element& x : subset_sums(xs)) {
            if (!jordan_expression(a, x, y).is_zero()) {
              r.jordan_witness = std::vector<Element>{x, y};
              break;
            }
          }
          break;
        }
  return r;
}

std::pair<MultOperator, MultOperator> mult_operators(const Algebra& a, const Element& x) {
  require_same_algebra(a, *x.algebra());
  const std::size_t d = a.dim();
  std::vector<Vector> left_cols, right_cols;
  for (std::size_t j = 0; j < d; ++j) {
    left_cols.push_back(multiply(a, x, a.basis(j)).coords());
    right_cols.push_back(multiply(a, a.basis(j), x).coords());
  }
  return {MultOperator{Matrix::from_columns(a.field(), d, left_cols), Side::left, x},
          MultOperator{Matrix::from_columns(a.field(), d, right_cols), Side::right, x}};
}

std::optional<Element> identity_element(const Algebra& a) {
  const std::size_t d = a.dim();
  // Unknown u: sum_i u_i c(i,j,k) = delta_jk and sum_i u_i c(j,i,k) = delta_jk.
  Matrix system(a.field(), 2 * d * d, d);
  Vector rhs(2 * d * d, a.field().zero());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t left_row = j * d + k, right_row = d * d + j * d + k;
      for (std::size_t i = 0; i < d; ++i) {
        system(left_row, i) = a.constant(i, j, k);
        system(right_row, i) = a.constant(j, i, k);
      }
      if (j == k) rhs[left_row] = rhs[right_row] = a.field().one();
    }
  }
  auto u = solve(system, rhs);
  if (!u) return std::nullopt;
  return a.element(std::move(*u));
}

AlgebraPtr matrix_units_algebra(const Field& f) {
  // Index (i, j) of e_ij with i, j in {1, 0} maps to basis position 2*(1-i) + (1-j).
  auto index = [](int i, int j) { return static_cast<std::size_t>(2 * (1 - i) + (1 - j)); };
  std::vector<ProductEntry> products;
  for (int i : {1, 0})
    for (int j : {1, 0})
      for (int k : {1, 0})
        for (int l : {1, 0})
          if (j == k) products.push_back({index(i, j), index(k, l), index(i, l), f.one()});
  return Algebra::create("M2", f, {"e11", "e10", "e01", "e00"}, products);
}

AlgebraPtr jordanify(const Algebra& a) {
  if (a.field().characteristic() == 2) {
    throw Error(ErrorCode::CharacteristicUnsupported, "symmetrisation needs 1/2");
  }
  const Scalar half = a.field().from_int(2).inverse();
  const std::size_t d = a.dim();
  std::vector<ProductEntry> products;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar c = half * (a.constant(i, j, k) + a.constant(j, i, k));
        if (!c.is_zero()) products.push_back({i, j, k, c});
      }
  std::string name = a.name();
  if (!name.starts_with("jordanified-")) name = "jordanified-" + name;
  return Algebra::create(std::move(name), a.field(), a.basis_names(), products);
}

AlgebraPtr zero_algebra(const Field& f, std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("z" + std::to_string(i + 1));
  return Algebra::create("zero", f, std::move(names), {});
}

AlgebraPtr diagonal_algebra(const Field& f, std::size_t dim) {
  std::vector<std::string> names;
  std::vector<ProductEntry> products;
  for (std::size_t i = 0; i < dim; ++i) {
    names.push_back("u" + std::to_string(i + 1));
    products.push_back({i, i, i, f.one()});
  }
  return Algebra::create("diagonal", f, std::move(names), products);
}

}  // namespace jordan
