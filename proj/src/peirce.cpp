#include "jordan/peirce.hpp"

#include <algorithm>

#include "jordan/carrier.hpp"
#include "jordan/error.hpp"

namespace jordan {

std::string_view to_string(IdempotentClass c) {
  switch (c) {
    case IdempotentClass::not_idempotent: return "not_idempotent";
    case IdempotentClass::zero: return "zero";
    case IdempotentClass::trivial_identity: return "trivial_identity";
    case IdempotentClass::nontrivial: return "nontrivial";
  }
  return "unknown";
}

std::string_view to_string(Component c) {
  switch (c) {
    case Component::one: return "J1";
    case Component::half: return "J1/2";
    case Component::zero: return "J0";
  }
  return "?";
}

IdempotentClass idempotent_class(const Algebra& a, const Element& e) {
  require_same_algebra(a, *e.algebra());
  if (e.is_zero()) return IdempotentClass::zero;
  if (multiply(a, e, e) != e) return IdempotentClass::not_idempotent;
  const auto unit = identity_element(a);
  if (unit && *unit == e) return IdempotentClass::trivial_identity;
  return IdempotentClass::nontrivial;
}

std::vector<ClassifiedIdempotent> find_idempotents(const Algebra& a, IdempotentSearch mode,
                                                   std::span<const Element> candidates,
                                                   std::size_t enumeration_cap) {
  std::vector<Element> pool;
  if (mode == IdempotentSearch::exhaustive) {
    if (a.field().is_rational()) {
      throw Error(ErrorCode::ModeUnsupported, "exhaustive idempotent search needs a prime field");
    }
    const FiniteCarrier carrier(a.shared_from_this(), enumeration_cap);
    for (std::size_t i = 1; i < carrier.size(); ++i) {
      const auto x = static_cast<CarrierIndex>(i);
      if (carrier.mul(x, x) == x) pool.push_back(carrier.decode(x));
    }
  } else {
    const std::size_t d = a.dim();
    if (d > 20) throw Error(ErrorCode::EnumerationTooLarge, "too many 0/1 vectors");
    for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
      Vector v(d, a.field().zero());
      for (std::size_t k = 0; k < d; ++k)
        if (mask & (std::size_t{1} << (d - 1 - k))) v[k] = a.field().one();
      pool.push_back(a.element(std::move(v)));
    }
    for (const auto& c : candidates) {
      require_same_algebra(a, *c.algebra());
      pool.push_back(c);
    }
  }

  std::vector<ClassifiedIdempotent> out;
  for (auto& x : pool) {
    if (x.is_zero() || multiply(a, x, x) != x) continue;
    out.push_back({x, IdempotentClass::nontrivial});
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.element < r.element; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.element == r.element; }),
            out.end());
  const auto unit = identity_element(a);
  for (auto& c : out) {
    if (unit && c.element == *unit) c.kind = IdempotentClass::trivial_identity;
  }
  return out;
}

PeirceDecomposition::PeirceDecomposition(Element idempotent, std::array<std::vector<Element>, 3> bases,
                                         bool symmetrized)
    : idempotent_(std::move(idempotent)),
      bases_(std::move(bases)),
      symmetrized_(symmetrized),
      change_(idempotent_.algebra()->field(), idempotent_.algebra()->dim(), idempotent_.algebra()->dim()),
      inverse_(change_) {
  std::vector<Vector> cols;
  for (const auto& b : bases_)
    for (const auto& v : b) cols.push_back(v.coords());
  const std::size_t d = idempotent_.algebra()->dim();
  if (cols.size() != d) throw Error(ErrorCode::DecompositionIncomplete, "component dimensions do not add up");
  change_ = Matrix::from_columns(idempotent_.algebra()->field(), d, cols);
  auto inv = inverse(change_);
  if (!inv) throw Error(ErrorCode::DecompositionIncomplete, "component bases are not independent");
  inverse_ = std::move(*inv);
}

PeirceDecomposition peirce_decompose(const Algebra& a, const Element& e, PeirceOptions options) {
  require_same_algebra(a, *e.algebra());
  if (a.field().characteristic() == 2) {
    throw Error(ErrorCode::CharacteristicUnsupported, "Peirce decomposition needs 1/2");
  }
  if (!options.symmetrized && !is_commutative(a)) {
    throw Error(ErrorCode::NoncommutativeDomain,
                "algebra '" + a.name() + "' is noncommutative; pass the symmetrized flag to use (L_e + R_e)/2");
  }
  const IdempotentClass kind = idempotent_class(a, e);
  if (kind != IdempotentClass::nontrivial) {
    throw Error(ErrorCode::NotIdempotent, e.to_string() + " is " + std::string(to_string(kind)));
  }

  const Field& f = a.field();
  const std::size_t d = a.dim();
  const Scalar half = f.from_int(2).inverse();
  const auto [left, right] = mult_operators(a, e);
  const Matrix op = (left.matrix + right.matrix).scaled(half);

  std::array<std::vector<Element>, 3> bases;
  const std::array<Scalar, 3> eigenvalues{f.one(), half, f.zero()};
  std::size_t total = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const Matrix shifted = op - Matrix::identity(f, d).scaled(eigenvalues[c]);
    const Matrix k = kernel(shifted);
    for (std::size_t r = 0; r < k.rows(); ++r) bases[c].push_back(a.element(k.row(r)));
    total += k.rows();
  }
  if (total != d) {
    throw Error(ErrorCode::DecompositionIncomplete, "eigenspaces for 1, 1/2, 0 span only " + std::to_string(total) +
                                                        " of " + std::to_string(d) + " dimensions");
  }
  return PeirceDecomposition(e, std::move(bases), options.symmetrized);
}

PeirceParts peirce_project(const PeirceDecomposition& d, const Element& x) {
  const Algebra& a = *d.algebra();
  require_same_algebra(a, *x.algebra());
  const Vector coeffs = d.change_of_basis_inverse().apply(x.coords());
  std::array<Element, 3> parts{a.zero(), a.zero(), a.zero()};
  std::size_t at = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    for (const auto& v : d.basis(kComponents[c])) {
      if (!coeffs[at].is_zero()) parts[c] += coeffs[at] * v;
      ++at;
    }
  }
  return {parts[0], parts[1], parts[2]};
}

bool in_component(const PeirceDecomposition& d, const Element& x, Component c) {
  const PeirceParts parts = peirce_project(d, x);
  for (Component other : kComponents) {
    if (other != c && !parts[other].is_zero()) return false;
  }
  return true;
}

bool PeirceRelationsReport::all_hold() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationCheck& r) { return r.holds; });
}

namespace {

// Product lands in the allowed components; an empty allowed list means product must vanish.
RelationCheck check_relation(const PeirceDecomposition& d, std::string name, std::vector<Component> lhs,
                             Component rhs_factor, std::vector<Component> allowed) {
  const Algebra& a = *d.algebra();
  RelationCheck check{std::move(name), true, std::nullopt};
  auto acceptable = [&](const Element& product) {
    const PeirceParts parts = peirce_project(d, product);
    for (Component c : kComponents) {
      if (std::find(allowed.begin(), allowed.end(), c) == allowed.end() && !parts[c].is_zero()) return false;
    }
    return true;
  };
  for (Component lc : lhs) {
    for (const auto& x : d.basis(lc)) {
      for (const auto& y : d.basis(rhs_factor)) {
        if (!acceptable(multiply(a, x, y))) {
          check.holds = false;
          check.witness = std::make_pair(x, y);
          return check;
        }
        if (!acceptable(multiply(a, y, x))) {
          check.holds = false;
          check.witness = std::make_pair(y, x);
          return check;
        }
      }
    }
  }
  return check;
}

// Nonzero a in span(target) with t a = 0 for every t in annihilators, if any.
std::optional<Element> annihilated_element(const Algebra& a, const std::vector<Element>& target,
                                           const std::vector<Element>& annihilators) {
  if (target.empty()) return std::nullopt;
  const std::size_t d = a.dim();
  Matrix system(a.field(), annihilators.size() * d, target.size());
  for (std::size_t t = 0; t < annihilators.size(); ++t) {
    for (std::size_t col = 0; col < target.size(); ++col) {
      const Element product = multiply(a, annihilators[t], target[col]);
      for (std::size_t k = 0; k < d; ++k) system(t * d + k, col) = product[k];
    }
  }
  const Matrix k = kernel(system);
  if (k.rows() == 0) return std::nullopt;
  Element w = a.zero();
  for (std::size_t col = 0; col < target.size(); ++col) {
    if (!k(0, col).is_zero()) w += k(0, col) * target[col];
  }
  return w;
}

}  // namespace

PeirceRelationsReport verify_peirce_relations(const PeirceDecomposition& d) {
  using C = Component;
  PeirceRelationsReport report;
  report.relations.push_back(check_relation(d, "J0J0 in J0", {C::zero}, C::zero, {C::zero}));
  report.relations.push_back(check_relation(d, "J1J1 in J1", {C::one}, C::one, {C::one}));
  report.relations.push_back(check_relation(d, "J1J0 = 0", {C::one}, C::zero, {}));
  report.relations.push_back(check_relation(d, "(J1+J0)J1/2 in J1/2", {C::one, C::zero}, C::half, {C::half}));
  report.relations.push_back(check_relation(d, "J1/2J1/2 in J1+J0", {C::half}, C::half, {C::one, C::zero}));
  return report;
}

TheoremConditions check_theorem_conditions(const PeirceDecomposition& d) {
  const Algebra& a = *d.algebra();
  const auto& j1 = d.basis(Component::one);
  const auto& jh = d.basis(Component::half);
  const auto& j0 = d.basis(Component::zero);

  TheoremConditions t;
  t.witness_i = annihilated_element(a, j1, jh);
  if (!t.witness_i) t.witness_i = annihilated_element(a, j0, jh);
  t.cond_i = !t.witness_i;
  t.witness_ii = annihilated_element(a, j0, j0);
  t.cond_ii = !t.witness_ii;
  t.witness_iii = annihilated_element(a, jh, j0);
  t.cond_iii = !t.witness_iii;
  return t;
}

}  // namespace jordan
