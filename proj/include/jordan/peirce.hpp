#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jordan/algebra.hpp"
#include "jordan/linalg.hpp"

namespace jordan {

enum class IdempotentClass { not_idempotent, zero, trivial_identity, nontrivial };

std::string_view to_string(IdempotentClass c);

IdempotentClass idempotent_class(const Algebra& a, const Element& e);

struct ClassifiedIdempotent {
  Element element;
  IdempotentClass kind;
};

enum class IdempotentSearch { exhaustive, heuristic };

/// Nonzero idempotents sorted lexicographically by coordinates.
/// Exhaustive mode scans the whole carrier (prime fields only, p^dim <= cap);
/// heuristic mode tests every 0/1 coordinate vector plus the given candidates.
std::vector<ClassifiedIdempotent> find_idempotents(const Algebra& a, IdempotentSearch mode,
                                                   std::span<const Element> candidates = {},
                                                   std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Peirce components, indexed by eigenvalue of (L_e + R_e)/2.
enum class Component { one = 0, half = 1, zero = 2 };

std::string_view to_string(Component c);
inline constexpr std::array<Component, 3> kComponents{Component::one, Component::half, Component::zero};

struct PeirceOptions {
  /// Accept a noncommutative algebra, decomposing with (L_e + R_e)/2.
  bool symmetrized = false;
};

class PeirceDecomposition {
 public:
  PeirceDecomposition(Element idempotent, std::array<std::vector<Element>, 3> bases, bool symmetrized);

  const AlgebraPtr& algebra() const noexcept { return idempotent_.algebra(); }
  const Element& idempotent() const noexcept { return idempotent_; }
  const std::vector<Element>& basis(Component c) const { return bases_[static_cast<std::size_t>(c)]; }
  std::size_t dim(Component c) const { return basis(c).size(); }
  bool symmetrized() const noexcept { return symmetrized_; }

  /// Columns are the concatenated component bases (J_1, then J_1/2, then J_0).
  const Matrix& change_of_basis() const noexcept { return change_; }
  const Matrix& change_of_basis_inverse() const noexcept { return inverse_; }

 private:
  Element idempotent_;
  std::array<std::vector<Element>, 3> bases_;
  bool symmetrized_;
  Matrix change_;
  Matrix inverse_;
};

/// Throws CharacteristicUnsupported (char 2), NoncommutativeDomain (no flag on
/// a noncommutative algebra), NotIdempotent, DecompositionIncomplete.
PeirceDecomposition peirce_decompose(const Algebra& a, const Element& e, PeirceOptions options = {});

struct PeirceParts {
  Element one;
  Element half;
  Element zero;

  const Element& operator[](Component c) const {
    return c == Component::one ? one : c == Component::half ? half : zero;
  }
};

PeirceParts peirce_project(const PeirceDecomposition& d, const Element& x);
/// True iff x lies in the given component.
bool in_component(const PeirceDecomposition& d, const Element& x, Component c);

struct RelationCheck {
  std::string name;
  bool holds = true;
  std::optional<std::pair<Element, Element>> witness;
};

struct PeirceRelationsReport {
  std::vector<RelationCheck> relations;
  bool all_hold() const;
};

/// Checks the five Peirce multiplication rules on all pairs of component
/// basis vectors, in both multiplication orders.
PeirceRelationsReport verify_peirce_relations(const PeirceDecomposition& d);

struct TheoremConditions {
  bool cond_i = true;
  bool cond_ii = true;
  bool cond_iii = true;
  std::optional<Element> witness_i;
  std::optional<Element> witness_ii;
  std::optional<Element> witness_iii;

  bool all() const { return cond_i && cond_ii && cond_iii; }
};

/// (i)   no nonzero a in J_1 or J_0 with t a = 0 for all t in J_1/2
/// (ii)  no nonzero a in J_0 with t a = 0 for all t in J_0
/// (iii) no nonzero a in J_1/2 with t a = 0 for all t in J_0
/// Each is decided by an exact kernel computation.
TheoremConditions check_theorem_conditions(const PeirceDecomposition& d);

}  // namespace jordan
