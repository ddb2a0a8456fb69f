#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jordan/algebra.hpp"
#include "jordan/carrier.hpp"
#include "jordan/monomial.hpp"
#include "jordan/peirce.hpp"

namespace jordan {

using CarrierPtr = std::shared_ptr<const FiniteCarrier>;

CarrierPtr make_carrier(const AlgebraPtr& a, std::size_t cap = kDefaultEnumerationCap);

/// A set map between two algebras. Over finite carriers it is a total
/// table; over Q only linear maps (given by their matrix) are representable.
class MapTable {
 public:
  /// images[i] is the image of carrier element i. Throws InvalidMapTable when
  /// the table is not total or disagrees with the linear hint.
  static MapTable from_table(CarrierPtr domain, CarrierPtr codomain, std::vector<CarrierIndex> images,
                             std::optional<Matrix> linear_hint = std::nullopt);
  static MapTable from_function(CarrierPtr domain, CarrierPtr codomain,
                                const std::function<Element(const Element&)>& f);
  /// Linear map with matrix m (codomain.dim rows, domain.dim columns).
  /// Filled in as a table when the domain is finite.
  static MapTable linear(const AlgebraPtr& domain, const AlgebraPtr& codomain, Matrix m);

  const AlgebraPtr& domain() const noexcept { return domain_; }
  const AlgebraPtr& codomain() const noexcept { return codomain_; }
  bool is_finite() const noexcept { return domain_carrier_ != nullptr; }
  const FiniteCarrier& domain_carrier() const;
  const FiniteCarrier& codomain_carrier() const;
  const CarrierPtr& domain_carrier_ptr() const noexcept { return domain_carrier_; }
  const CarrierPtr& codomain_carrier_ptr() const noexcept { return codomain_carrier_; }
  const std::vector<CarrierIndex>& images() const noexcept { return images_; }
  const std::optional<Matrix>& linear_hint() const noexcept { return hint_; }

  CarrierIndex operator()(CarrierIndex x) const { return images_[x]; }
  Element apply(const Element& x) const;

  friend bool operator==(const MapTable& a, const MapTable& b);

 private:
  MapTable() = default;

  AlgebraPtr domain_;
  AlgebraPtr codomain_;
  CarrierPtr domain_carrier_;
  CarrierPtr codomain_carrier_;
  std::vector<CarrierIndex> images_;
  std::optional<Matrix> hint_;
};

/// A map from an algebra to itself, read as a candidate derivation.
class DerivationTable {
 public:
  /// Throws AlgebraMismatch unless the map's codomain is its domain.
  explicit DerivationTable(MapTable map);

  static DerivationTable from_table(CarrierPtr carrier, std::vector<CarrierIndex> images,
                                    std::optional<Matrix> linear_hint = std::nullopt);
  static DerivationTable linear(const AlgebraPtr& a, Matrix m);
  static DerivationTable zero(CarrierPtr carrier);

  const MapTable& map() const noexcept { return map_; }
  const AlgebraPtr& algebra() const noexcept { return map_.domain(); }
  bool is_finite() const noexcept { return map_.is_finite(); }
  const FiniteCarrier& carrier() const { return map_.domain_carrier(); }
  CarrierIndex operator()(CarrierIndex x) const { return map_(x); }
  Element apply(const Element& x) const { return map_.apply(x); }

  friend bool operator==(const DerivationTable& a, const DerivationTable& b) { return a.map_ == b.map_; }

 private:
  MapTable map_;
};

/// Result of an exhaustive predicate. On failure the witness holds the
/// smallest falsifying argument tuple in scan order.
struct Verdict {
  bool holds = true;
  std::vector<Element> witness;
  std::optional<MonomialTree> tree;

  explicit operator bool() const noexcept { return holds; }
  std::string describe() const;
};

enum class TreeMode { canonical, all_trees };

inline constexpr std::size_t kDefaultEvaluationBudget = 100'000'000;

Verdict is_additive(const MapTable& phi);
Verdict is_additive(const DerivationTable& d);

/// Throws CarrierSizeMismatch when the finite carriers differ in size.
bool is_bijective(const MapTable& phi);

/// phi(m(x1..xn)) = m(phi(x1)..phi(xn)) for the selected trees and all tuples.
/// Throws BudgetExceeded above the evaluation budget.
Verdict is_n_multiplicative(const MapTable& phi, std::size_t n, TreeMode mode = TreeMode::canonical,
                            std::size_t budget = kDefaultEvaluationBudget);

/// phi((xy)x) = (phi(x)phi(y))phi(x). Throws NoncommutativeDomain.
Verdict is_jordan_semitriple(const MapTable& phi);

/// d(m(x1..xn)) = sum_i m(x1..d(xi)..xn).
Verdict is_n_derivation(const DerivationTable& d, std::size_t n, TreeMode mode = TreeMode::canonical,
                        std::size_t budget = kDefaultEvaluationBudget);

/// d((xy)x) = d(x)(yx) + (x d(y))x + (xy)d(x). Throws NoncommutativeDomain.
Verdict is_jordan_triple_derivation(const DerivationTable& d);

/// [L_y, L_z] + [L_y, R_z] + [R_y, R_z]
Matrix inner_derivation(const Algebra& a, const Element& y, const Element& z);

struct ReducedDerivation {
  DerivationTable delta;
  Element d_of_e;  // lies in J_1/2
  PeirceDecomposition decomposition;
};

/// Delta = D_{d(e), 4e} - 3d, which vanishes at e.
ReducedDerivation reduce_derivation(const Algebra& a, const Element& e, const DerivationTable& d, std::size_t n);

/// Delta(J_i) in J_i for each component. Throws PreconditionViolated when Delta(e) != 0.
Verdict derivation_peirce_check(const DerivationTable& delta, const PeirceDecomposition& decomposition);

}  // namespace jordan
