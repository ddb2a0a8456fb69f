#pragma once

#include <random>
#include <string>
#include <vector>

#include "jordan/algebra.hpp"

namespace fixtures {

using namespace jordan;

inline AlgebraPtr jordan_m2(const Field& f) { return jordanify(*matrix_units_algebra(f)); }

/// F_p[t]/(t^2)
inline AlgebraPtr dual_numbers(const Field& f) {
  const std::vector<ProductEntry> p{{0, 0, 0, f.one()}, {0, 1, 1, f.one()}, {1, 0, 1, f.one()}};
  return Algebra::create("dual", f, {"1", "t"}, p);
}

/// F_p[t]/(t^2 + 1), a field when -1 is not a square mod p.
inline AlgebraPtr gaussian(const Field& f) {
  const std::vector<ProductEntry> p{
      {0, 0, 0, f.one()}, {0, 1, 1, f.one()}, {1, 0, 1, f.one()}, {1, 1, 0, -f.one()}};
  return Algebra::create("gaussian", f, {"1", "i"}, p);
}

/// Basis (e, a, b): e idempotent, a in J_1/2, b in J_0, and ab = ba = e planted.
inline AlgebraPtr planted_relation_failure(const Field& f) {
  const Scalar half = f.from_int(2).inverse();
  const std::vector<ProductEntry> p{{0, 0, 0, f.one()}, {0, 1, 1, half}, {1, 0, 1, half},
                                    {1, 2, 0, f.one()}, {2, 1, 0, f.one()}};
  return Algebra::create("planted", f, {"e", "a", "b"}, p);
}

/// Uniformly random commutative structure constants.
inline AlgebraPtr random_commutative(const Field& f, std::size_t dim, std::mt19937& rng, const std::string& name) {
  std::uniform_int_distribution<std::int64_t> coeff(0, static_cast<std::int64_t>(f.modulus()) - 1);
  std::vector<ProductEntry> p;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        const Scalar c = f.from_int(coeff(rng));
        if (c.is_zero()) continue;
        p.push_back({i, j, k, c});
        if (i != j) p.push_back({j, i, k, c});
      }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("b" + std::to_string(i + 1));
  return Algebra::create(name, f, names, p);
}

/// Same algebra in a new basis: b'_i = sum_r P(r, i) b_r. P must be invertible.
inline AlgebraPtr change_basis(const Algebra& a, const Matrix& p, const Matrix& p_inv, const std::string& name) {
  const std::size_t d = a.dim();
  std::vector<Element> nb;
  for (std::size_t i = 0; i < d; ++i) nb.push_back(a.element(p.column(i)));
  std::vector<ProductEntry> entries;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vector c = p_inv.apply(multiply(a, nb[i], nb[j]).coords());
      for (std::size_t k = 0; k < d; ++k)
        if (!c[k].is_zero()) entries.push_back({i, j, k, c[k]});
    }
  return Algebra::create(name, a.field(), a.basis_names(), entries);
}

}  // namespace fixtures
