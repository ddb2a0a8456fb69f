#include "jordan/maps.hpp"

#include <algorithm>

#include "jordan/error.hpp"

namespace jordan {

CarrierPtr make_carrier(const AlgebraPtr& a, std::size_t cap) { return std::make_shared<const FiniteCarrier>(a, cap); }

MapTable MapTable::from_table(CarrierPtr domain, CarrierPtr codomain, std::vector<CarrierIndex> images,
                              std::optional<Matrix> linear_hint) {
  if (images.size() != domain->size()) {
    throw Error(ErrorCode::InvalidMapTable, "table has " + std::to_string(images.size()) + " entries, carrier has " +
                                                std::to_string(domain->size()));
  }
  for (CarrierIndex y : images) {
    if (y >= codomain->size()) throw Error(ErrorCode::InvalidMapTable, "image index outside the codomain");
  }
  MapTable m;
  m.domain_ = domain->algebra();
  m.codomain_ = codomain->algebra();
  m.images_ = std::move(images);
  if (linear_hint) {
    if (linear_hint->rows() != m.codomain_->dim() || linear_hint->cols() != m.domain_->dim()) {
      throw Error(ErrorCode::InvalidMapTable, "linear hint has the wrong shape");
    }
    for (std::size_t x = 0; x < domain->size(); ++x) {
      const Element image = m.codomain_->element(linear_hint->apply(domain->decode(static_cast<CarrierIndex>(x)).coords()));
      if (codomain->encode(image) != m.images_[x]) {
        throw Error(ErrorCode::InvalidMapTable, "table disagrees with its linear hint at " +
                                                    domain->decode(static_cast<CarrierIndex>(x)).to_string());
      }
    }
  }
  m.domain_carrier_ = std::move(domain);
  m.codomain_carrier_ = std::move(codomain);
  m.hint_ = std::move(linear_hint);
  return m;
}

MapTable MapTable::from_function(CarrierPtr domain, CarrierPtr codomain,
                                 const std::function<Element(const Element&)>& f) {
  std::vector<CarrierIndex> images(domain->size());
  for (std::size_t x = 0; x < domain->size(); ++x) {
    images[x] = codomain->encode(f(domain->decode(static_cast<CarrierIndex>(x))));
  }
  return from_table(std::move(domain), std::move(codomain), std::move(images));
}

MapTable MapTable::linear(const AlgebraPtr& domain, const AlgebraPtr& codomain, Matrix m) {
  if (m.rows() != codomain->dim() || m.cols() != domain->dim()) {
    throw Error(ErrorCode::InvalidMapTable, "linear map matrix has the wrong shape");
  }
  if (domain->field() != codomain->field() || m.field() != domain->field()) {
    throw Error(ErrorCode::FieldMismatch, "linear map between algebras over different fields");
  }
  if (domain->carrier_size()) {
    auto dc = make_carrier(domain);
    auto cc = domain->same_structure(*codomain) ? dc : make_carrier(codomain);
    std::vector<CarrierIndex> images(dc->size());
    for (std::size_t x = 0; x < dc->size(); ++x) {
      images[x] = cc->encode(codomain->element(m.apply(dc->decode(static_cast<CarrierIndex>(x)).coords())));
    }
    MapTable t;
    t.domain_ = domain;
    t.codomain_ = codomain;
    t.domain_carrier_ = std::move(dc);
    t.codomain_carrier_ = std::move(cc);
    t.images_ = std::move(images);
    t.hint_ = std::move(m);
    return t;
  }
  MapTable t;
  t.domain_ = domain;
  t.codomain_ = codomain;
  t.hint_ = std::move(m);
  return t;
}

const FiniteCarrier& MapTable::domain_carrier() const {
  if (!domain_carrier_) throw Error(ErrorCode::CarrierInfinite, "map over an infinite carrier has no table");
  return *domain_carrier_;
}

const FiniteCarrier& MapTable::codomain_carrier() const {
  if (!codomain_carrier_) throw Error(ErrorCode::CarrierInfinite, "map over an infinite carrier has no table");
  return *codomain_carrier_;
}

Element MapTable::apply(const Element& x) const {
  require_same_algebra(*domain_, *x.algebra());
  if (is_finite()) return codomain_carrier_->decode(images_[domain_carrier_->encode(x)]);
  return codomain_->element(hint_->apply(x.coords()));
}

bool operator==(const MapTable& a, const MapTable& b) {
  if (!a.domain_->same_structure(*b.domain_) || !a.codomain_->same_structure(*b.codomain_)) return false;
  if (a.is_finite() != b.is_finite()) return false;
  return a.is_finite() ? a.images_ == b.images_ : a.hint_ == b.hint_;
}

DerivationTable::DerivationTable(MapTable map) : map_(std::move(map)) {
  require_same_algebra(*map_.domain(), *map_.codomain());
}

DerivationTable DerivationTable::from_table(CarrierPtr carrier, std::vector<CarrierIndex> images,
                                            std::optional<Matrix> linear_hint) {
  return DerivationTable(MapTable::from_table(carrier, carrier, std::move(images), std::move(linear_hint)));
}

DerivationTable DerivationTable::linear(const AlgebraPtr& a, Matrix m) {
  return DerivationTable(MapTable::linear(a, a, std::move(m)));
}

DerivationTable DerivationTable::zero(CarrierPtr carrier) {
  const CarrierIndex z = carrier->encode(carrier->algebra()->zero());
  std::vector<CarrierIndex> images(carrier->size(), z);
  return from_table(std::move(carrier), std::move(images));
}

std::string Verdict::describe() const {
  if (holds) return "holds";
  std::string out = "fails";
  if (tree) out += " for " + tree->to_string();
  out += " at (";
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i) out += "; ";
    out += witness[i].to_string();
  }
  return out + ")";
}

namespace {

Verdict failure(std::vector<Element> witness, std::optional<MonomialTree> tree = std::nullopt) {
  Verdict v;
  v.holds = false;
  v.witness = std::move(witness);
  v.tree = std::move(tree);
  return v;
}

std::vector<MonomialTree> selected_trees(std::size_t n, TreeMode mode) {
  if (n < 2) throw Error(ErrorCode::ArityMismatch, "monomial degree must be at least 2");
  return mode == TreeMode::canonical ? std::vector<MonomialTree>{MonomialTree::canonical(n)} : MonomialTree::all_trees(n);
}

void check_budget(std::size_t base, std::size_t n, std::size_t factor, std::size_t budget) {
  std::size_t total = factor;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / std::max<std::size_t>(base, 1)) {
      throw Error(ErrorCode::BudgetExceeded, "exhaustive scan exceeds " + std::to_string(budget) + " evaluations");
    }
    total *= base;
  }
  if (total > budget) {
    throw Error(ErrorCode::BudgetExceeded, "exhaustive scan exceeds " + std::to_string(budget) + " evaluations");
  }
}

// Calls visit(tuple) for every tuple in [0, base)^n in lexicographic order
// until it returns false. Returns false if stopped early.
template <typename Visit>
bool for_each_tuple(std::size_t base, std::size_t n, Visit&& visit) {
  std::vector<CarrierIndex> t(n, 0);
  if (base == 0) return true;
  while (true) {
    if (!visit(std::span<const CarrierIndex>(t))) return false;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++t[i] < base) break;
      t[i] = 0;
      if (i == 0) return true;
    }
  }
}

std::vector<Element> decode_all(const FiniteCarrier& c, std::span<const CarrierIndex> t) {
  std::vector<Element> out;
  for (auto x : t) out.push_back(c.decode(x));
  return out;
}

void require_commutative_domain(const Algebra& a) {
  if (!is_commutative(a)) {
    throw Error(ErrorCode::NoncommutativeDomain, "'" + a.name() + "' is noncommutative; xyx is ambiguous there");
  }
}

}  // namespace

Verdict is_additive(const MapTable& phi) {
  if (!phi.is_finite()) {
    if (phi.linear_hint()) return {};
    throw Error(ErrorCode::CarrierInfinite, "additivity scan needs a finite carrier");
  }
  const FiniteCarrier& dc = phi.domain_carrier();
  const FiniteCarrier& cc = phi.codomain_carrier();
  const std::size_t n = dc.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xi = static_cast<CarrierIndex>(x), yi = static_cast<CarrierIndex>(y);
      if (phi(dc.add(xi, yi)) != cc.add(phi(xi), phi(yi))) return failure({dc.decode(xi), dc.decode(yi)});
    }
  }
  return {};
}

Verdict is_additive(const DerivationTable& d) { return is_additive(d.map()); }

bool is_bijective(const MapTable& phi) {
  if (!phi.is_finite()) {
    if (!phi.linear_hint()) throw Error(ErrorCode::CarrierInfinite, "bijectivity needs a finite carrier");
    const Matrix& m = *phi.linear_hint();
    return m.rows() == m.cols() && inverse(m).has_value();
  }
  const std::size_t n = phi.domain_carrier().size();
  if (n != phi.codomain_carrier().size()) {
    throw Error(ErrorCode::CarrierSizeMismatch, "domain and codomain carriers differ in size");
  }
  std::vector<bool> hit(n, false);
  for (CarrierIndex y : phi.images()) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

Verdict is_n_multiplicative(const MapTable& phi, std::size_t n, TreeMode mode, std::size_t budget) {
  const auto trees = selected_trees(n, mode);
  const Algebra& dom = *phi.domain();
  const Algebra& cod = *phi.codomain();

  if (!phi.is_finite()) {
    if (!phi.linear_hint()) throw Error(ErrorCode::CarrierInfinite, "multiplicativity scan needs a finite carrier");
    // Both sides are multilinear for a linear map: basis tuples suffice.
    check_budget(dom.dim(), n, trees.size(), budget);
    for (const auto& tree : trees) {
      Verdict v;
      for_each_tuple(dom.dim(), n, [&](std::span<const CarrierIndex> t) {
        std::vector<Element> args, images;
        for (auto i : t) {
          args.push_back(dom.basis(i));
          images.push_back(phi.apply(args.back()));
        }
        if (phi.apply(monomial_eval(dom, tree, args)) != monomial_eval(cod, tree, images)) {
          v = failure(args, tree);
          return false;
        }
        return true;
      });
      if (!v) return v;
    }
    return {};
  }

  const FiniteCarrier& dc = phi.domain_carrier();
  const FiniteCarrier& cc = phi.codomain_carrier();
  check_budget(dc.size(), n, trees.size(), budget);
  auto dmul = [&](CarrierIndex a, CarrierIndex b) { return dc.mul(a, b); };
  auto cmul = [&](CarrierIndex a, CarrierIndex b) { return cc.mul(a, b); };
  std::vector<CarrierIndex> images(n);
  for (const auto& tree : trees) {
    const MonomialProgram program(tree);
    std::optional<Verdict> bad;
    for_each_tuple(dc.size(), n, [&](std::span<const CarrierIndex> t) {
      for (std::size_t i = 0; i < n; ++i) images[i] = phi(t[i]);
      const CarrierIndex lhs = phi(program.run<CarrierIndex>(t, dmul));
      const CarrierIndex rhs = program.run<CarrierIndex>(std::span<const CarrierIndex>(images), cmul);
      if (lhs != rhs) {
        bad = failure(decode_all(dc, t), tree);
        return false;
      }
      return true;
    });
    if (bad) return *bad;
  }
  return {};
}

Verdict is_jordan_semitriple(const MapTable& phi) {
  require_commutative_domain(*phi.domain());
  const FiniteCarrier& dc = phi.domain_carrier();
  const FiniteCarrier& cc = phi.codomain_carrier();
  for (std::size_t x = 0; x < dc.size(); ++x) {
    for (std::size_t y = 0; y < dc.size(); ++y) {
      const auto xi = static_cast<CarrierIndex>(x), yi = static_cast<CarrierIndex>(y);
      const CarrierIndex lhs = phi(dc.mul(dc.mul(xi, yi), xi));
      const CarrierIndex rhs = cc.mul(cc.mul(phi(xi), phi(yi)), phi(xi));
      if (lhs != rhs) return failure({dc.decode(xi), dc.decode(yi)});
    }
  }
  return {};
}

Verdict is_n_derivation(const DerivationTable& d, std::size_t n, TreeMode mode, std::size_t budget) {
  const auto trees = selected_trees(n, mode);
  const Algebra& a = *d.algebra();

  if (!d.is_finite()) {
    if (!d.map().linear_hint()) throw Error(ErrorCode::CarrierInfinite, "derivation scan needs a finite carrier");
    check_budget(a.dim(), n, trees.size() * n, budget);
    for (const auto& tree : trees) {
      Verdict v;
      for_each_tuple(a.dim(), n, [&](std::span<const CarrierIndex> t) {
        std::vector<Element> args;
        for (auto i : t) args.push_back(a.basis(i));
        Element rhs = a.zero();
        for (std::size_t i = 0; i < n; ++i) {
          auto replaced = args;
          replaced[i] = d.apply(args[i]);
          rhs += monomial_eval(a, tree, replaced);
        }
        if (d.apply(monomial_eval(a, tree, args)) != rhs) {
          v = failure(args, tree);
          return false;
        }
        return true;
      });
      if (!v) return v;
    }
    return {};
  }

  const FiniteCarrier& c = d.carrier();
  check_budget(c.size(), n, trees.size() * (n + 1), budget);
  auto mul = [&](CarrierIndex x, CarrierIndex y) { return c.mul(x, y); };
  const CarrierIndex zero = c.encode(a.zero());
  std::vector<CarrierIndex> replaced(n);
  for (const auto& tree : trees) {
    const MonomialProgram program(tree);
    std::optional<Verdict> bad;
    for_each_tuple(c.size(), n, [&](std::span<const CarrierIndex> t) {
      const CarrierIndex lhs = d(program.run<CarrierIndex>(t, mul));
      CarrierIndex rhs = zero;
      std::copy(t.begin(), t.end(), replaced.begin());
      for (std::size_t i = 0; i < n; ++i) {
        replaced[i] = d(t[i]);
        rhs = c.add(rhs, program.run<CarrierIndex>(std::span<const CarrierIndex>(replaced), mul));
        replaced[i] = t[i];
      }
      if (lhs != rhs) {
        bad = failure(decode_all(c, t), tree);
        return false;
      }
      return true;
    });
    if (bad) return *bad;
  }
  return {};
}

Verdict is_jordan_triple_derivation(const DerivationTable& d) {
  require_commutative_domain(*d.algebra());
  const FiniteCarrier& c = d.carrier();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const auto xi = static_cast<CarrierIndex>(x), yi = static_cast<CarrierIndex>(y);
      const CarrierIndex xy = c.mul(xi, yi);
      const CarrierIndex lhs = d(c.mul(xy, xi));
      const CarrierIndex rhs = c.add(c.add(c.mul(d(xi), c.mul(yi, xi)), c.mul(c.mul(xi, d(yi)), xi)), c.mul(xy, d(xi)));
      if (lhs != rhs) return failure({c.decode(xi), c.decode(yi)});
    }
  }
  return {};
}

Matrix inner_derivation(const Algebra& a, const Element& y, const Element& z) {
  const auto [ly, ry] = mult_operators(a, y);
  const auto [lz, rz] = mult_operators(a, z);
  auto bracket = [](const Matrix& p, const Matrix& q) { return p * q - q * p; };
  return bracket(ly.matrix, lz.matrix) + bracket(ly.matrix, rz.matrix) + bracket(ry.matrix, rz.matrix);
}

ReducedDerivation reduce_derivation(const Algebra& a, const Element& e, const DerivationTable& d, std::size_t n) {
  require_same_algebra(a, *e.algebra());
  require_same_algebra(a, *d.algebra());
  if (n < 2) throw Error(ErrorCode::ArityMismatch, "derivation degree must be at least 2");
  if (!is_k_torsion_free(a.field(), 2) || !is_k_torsion_free(a.field(), n - 1)) {
    throw Error(ErrorCode::TorsionViolation, a.field().name() + " is not {2, " + std::to_string(n - 1) + "}-torsion free");
  }
  if (!identity_report(a).jordan) {
    throw Error(ErrorCode::PreconditionViolated, "'" + a.name() + "' is not a commutative Jordan algebra");
  }
  PeirceDecomposition decomposition = peirce_decompose(a, e);
  if (const Verdict v = is_n_derivation(d, n); !v) {
    throw Error(ErrorCode::NotDerivation, "map is not a " + std::to_string(n) + "-multiplicative derivation: " +
                                              v.describe());
  }
  Element de = d.apply(e);
  if (!in_component(decomposition, de, Component::half)) {
    throw Error(ErrorCode::DerivationOfIdempotentNotHalf, "d(e) = " + de.to_string() + " is not in J1/2");
  }

  const Field& f = a.field();
  const Matrix inner = inner_derivation(a, de, f.from_int(4) * e);
  const Scalar three = f.from_int(3);
  std::optional<DerivationTable> delta;
  if (d.is_finite()) {
    const FiniteCarrier& c = d.carrier();
    std::vector<CarrierIndex> images(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) {
      const Element xe = c.decode(static_cast<CarrierIndex>(x));
      const Element value = a.element(inner.apply(xe.coords())) - three * d.apply(xe);
      images[x] = c.encode(value);
    }
    std::optional<Matrix> hint;
    if (d.map().linear_hint()) hint = inner - d.map().linear_hint()->scaled(three);
    delta = DerivationTable::from_table(d.map().domain_carrier_ptr(), std::move(images), std::move(hint));
  } else {
    delta = DerivationTable::linear(d.algebra(), inner - d.map().linear_hint()->scaled(three));
  }
  return ReducedDerivation{std::move(*delta), std::move(de), std::move(decomposition)};
}

Verdict derivation_peirce_check(const DerivationTable& delta, const PeirceDecomposition& decomposition) {
  const Algebra& a = *decomposition.algebra();
  require_same_algebra(a, *delta.algebra());
  if (!delta.apply(decomposition.idempotent()).is_zero()) {
    throw Error(ErrorCode::PreconditionViolated, "Delta(e) must vanish");
  }
  for (Component comp : kComponents) {
    const auto& basis = decomposition.basis(comp);
    if (delta.is_finite()) {
      const FiniteCarrier& c = delta.carrier();
      std::vector<Vector> coords;
      for (const auto& v : basis) coords.push_back(v.coords());
      for (CarrierIndex x : c.span_elements(coords)) {
        if (!in_component(decomposition, c.decode(delta(x)), comp)) return failure({c.decode(x)});
      }
    } else {
      for (const auto& v : basis) {
        if (!in_component(decomposition, delta.apply(v), comp)) return failure({v});
      }
    }
  }
  return {};
}

}  // namespace jordan
