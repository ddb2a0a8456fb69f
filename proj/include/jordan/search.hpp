#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "jordan/algebra.hpp"
#include "jordan/maps.hpp"
#include "jordan/peirce.hpp"

namespace jordan {

/// Unset fields are unbounded. max_witnesses = 0 stops before the first node.
struct SearchBudget {
  std::optional<std::size_t> max_nodes;
  std::optional<std::size_t> max_seconds;
  std::optional<std::size_t> max_witnesses;
};

enum class SearchStatus { exhausted, node_budget, time_budget, witness_budget };
std::string_view to_string(SearchStatus s);

/// Stream terminator. Anything but `exhausted` means the budget ran out and
/// the items found so far are a valid but partial enumeration.
struct SearchTerminator {
  SearchStatus status = SearchStatus::exhausted;
  std::size_t nodes = 0;
  bool exhausted() const noexcept { return status == SearchStatus::exhausted; }
};

template <typename T>
struct SearchStream {
  std::vector<T> items;
  SearchTerminator terminator;
};

using MapStream = SearchStream<MapTable>;
using DerivationStream = SearchStream<DerivationTable>;

struct SearchOptions {
  /// Splits the tree at the first branching variable. The merged stream has
  /// the sequential order; with a binding budget the cut-off point may vary.
  std::size_t workers = 1;
};

/// All bijections A -> A' satisfying the canonical-tree n-multiplicativity.
/// Throws CarrierSizeMismatch, CarrierInfinite, ArityMismatch.
MapStream enumerate_multiplicative_bijections(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t n,
                                              const SearchBudget& budget, const SearchOptions& options = {});

/// All tables satisfying the canonical-tree n-derivation identity. With a
/// decomposition, d(0) = 0 and d(e) in J_1/2 are imposed up front.
DerivationStream enumerate_n_derivations(const AlgebraPtr& a, std::size_t n, const SearchBudget& budget,
                                         const std::optional<PeirceDecomposition>& seed = std::nullopt,
                                         const SearchOptions& options = {});

struct AuditReport {
  std::size_t witnesses_found = 0;
  bool all_additive = true;
  std::vector<MapTable> nonadditive_witnesses;
  bool exhausted = false;
  std::optional<TheoremConditions> hypothesis_record;
};

AuditReport additivity_audit(const MapStream& stream, std::optional<TheoremConditions> hypotheses);
AuditReport additivity_audit(const DerivationStream& stream, std::optional<TheoremConditions> hypotheses);
AuditReport additivity_audit(const MapStream& stream, const PeirceDecomposition& hypotheses);
AuditReport additivity_audit(const DerivationStream& stream, const PeirceDecomposition& hypotheses);

}  // namespace jordan
