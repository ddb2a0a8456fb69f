#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jordan/error.hpp"
#include "jordan/search.hpp"
#include "oracle.hpp"

using namespace jordan;

namespace {

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

using Table = std::vector<std::uint32_t>;

std::set<Table> tables(const MapStream& s) {
  std::set<Table> out;
  for (const auto& m : s.items) out.insert(Table(m.images().begin(), m.images().end()));
  return out;
}

std::set<Table> tables(const DerivationStream& s) {
  std::set<Table> out;
  for (const auto& d : s.items) out.insert(Table(d.map().images().begin(), d.map().images().end()));
  return out;
}

Table linear_table(const AlgebraPtr& a, const Matrix& m) {
  const auto map = MapTable::linear(a, a, m);
  return Table(map.images().begin(), map.images().end());
}

Matrix transpose_matrix(const Field& f) {
  Matrix m(f, 4, 4);
  const std::size_t image[] = {0, 2, 1, 3};
  for (std::size_t j = 0; j < 4; ++j) m(image[j], j) = f.one();
  return m;
}

}  // namespace

TEST(SearchMaps, JordanMatrixUnitsOverF3) {
  const Field f = Field::prime(3);
  const auto k = fixtures::jordan_m2(f);
  const MapStream s = enumerate_multiplicative_bijections(k, k, 2, {});
  EXPECT_TRUE(s.terminator.exhausted());
  EXPECT_EQ(s.items.size(), 48u);
  const auto found = tables(s);
  EXPECT_EQ(found.size(), s.items.size());
  EXPECT_TRUE(found.count(linear_table(k, Matrix::identity(f, 4))));
  EXPECT_TRUE(found.count(linear_table(k, transpose_matrix(f))));
  for (const auto& m : s.items) EXPECT_TRUE(is_n_multiplicative(m, 2));
  const AuditReport audit = additivity_audit(s, peirce_decompose(*k, k->basis(0)));
  EXPECT_TRUE(audit.all_additive);
  EXPECT_TRUE(audit.exhausted);
  EXPECT_EQ(audit.witnesses_found, 48u);
  ASSERT_TRUE(audit.hypothesis_record.has_value());
  EXPECT_TRUE(audit.hypothesis_record->all());
}

TEST(SearchMaps, CompleteAgainstPermutationFilter) {
  const Field f = Field::prime(3);
  const std::vector<AlgebraPtr> cases{diagonal_algebra(f, 2), zero_algebra(f, 2), fixtures::dual_numbers(f),
                                      fixtures::gaussian(f)};
  for (const auto& a : cases) {
    const auto expected = oracle::multiplicative_bijections(oracle::Table::of(*a), 2);
    const MapStream s = enumerate_multiplicative_bijections(a, a, 2, {});
    ASSERT_TRUE(s.terminator.exhausted());
    EXPECT_EQ(tables(s), std::set<Table>(expected.begin(), expected.end())) << a->name();
    EXPECT_EQ(s.items.size(), expected.size()) << a->name();
  }
}

TEST(SearchMaps, ZeroAlgebraFixesOnlyZero) {
  const auto z = zero_algebra(Field::prime(3), 2);
  EXPECT_EQ(enumerate_multiplicative_bijections(z, z, 2, {}).items.size(), 40320u);
}

TEST(SearchMaps, NonadditiveWitnessesOnGaussianField) {
  const auto g = fixtures::gaussian(Field::prime(3));
  const MapStream s = enumerate_multiplicative_bijections(g, g, 2, {});
  const AuditReport audit = additivity_audit(s, std::nullopt);
  EXPECT_FALSE(audit.all_additive);
  EXPECT_FALSE(audit.nonadditive_witnesses.empty());
  for (const auto& m : audit.nonadditive_witnesses) EXPECT_FALSE(is_additive(m));
  EXPECT_FALSE(audit.hypothesis_record.has_value());
}

TEST(SearchMaps, ArityThree) {
  const Field f = Field::prime(3);
  for (const auto& a : {diagonal_algebra(f, 2), fixtures::dual_numbers(f)}) {
    const auto expected = oracle::multiplicative_bijections(oracle::Table::of(*a), 3);
    const MapStream s = enumerate_multiplicative_bijections(a, a, 3, {});
    EXPECT_EQ(tables(s), std::set<Table>(expected.begin(), expected.end())) << a->name();
    for (const auto& m : s.items) EXPECT_TRUE(is_n_multiplicative(m, 3));
  }
}

TEST(SearchMaps, BetweenIsomorphicAlgebras) {
  const Field f = Field::prime(3);
  const auto a = diagonal_algebra(f, 2);
  Matrix p(f, 2, 2), p_inv(f, 2, 2);
  p(0, 1) = p(1, 0) = f.one();
  p_inv = p;
  const auto b = fixtures::change_basis(*a, p, p_inv, "swapped");
  const MapStream s = enumerate_multiplicative_bijections(a, b, 2, {});
  EXPECT_FALSE(s.items.empty());
  for (const auto& m : s.items) EXPECT_TRUE(is_n_multiplicative(m, 2));
}

TEST(SearchMaps, Errors) {
  const Field f3 = Field::prime(3);
  const auto a = diagonal_algebra(f3, 2);
  expect_error(ErrorCode::ArityMismatch, [&] { enumerate_multiplicative_bijections(a, a, 1, {}); });
  expect_error(ErrorCode::CarrierSizeMismatch,
               [&] { enumerate_multiplicative_bijections(a, diagonal_algebra(f3, 3), 2, {}); });
  expect_error(ErrorCode::FieldMismatch,
               [&] { enumerate_multiplicative_bijections(a, diagonal_algebra(Field::prime(5), 2), 2, {}); });
  const auto q = diagonal_algebra(Field::rational(), 2);
  expect_error(ErrorCode::CarrierInfinite, [&] { enumerate_multiplicative_bijections(q, q, 2, {}); });
  expect_error(ErrorCode::CarrierInfinite, [&] { enumerate_n_derivations(q, 2, {}); });
}

TEST(SearchBudgets, NodeBudgetYieldsPrefix) {
  const auto k = fixtures::jordan_m2(Field::prime(3));
  const MapStream full = enumerate_multiplicative_bijections(k, k, 2, {});
  SearchBudget budget;
  budget.max_nodes = 200;
  const MapStream partial = enumerate_multiplicative_bijections(k, k, 2, budget);
  EXPECT_EQ(partial.terminator.status, SearchStatus::node_budget);
  EXPECT_FALSE(partial.terminator.exhausted());
  ASSERT_LE(partial.items.size(), full.items.size());
  EXPECT_LT(partial.items.size(), full.items.size());
  for (std::size_t i = 0; i < partial.items.size(); ++i) EXPECT_EQ(partial.items[i], full.items[i]);
  EXPECT_FALSE(additivity_audit(partial, std::nullopt).exhausted);
}

TEST(SearchBudgets, WitnessBudget) {
  const auto k = fixtures::jordan_m2(Field::prime(3));
  SearchBudget three;
  three.max_witnesses = 3;
  const MapStream s = enumerate_multiplicative_bijections(k, k, 2, three);
  EXPECT_EQ(s.items.size(), 3u);
  EXPECT_EQ(s.terminator.status, SearchStatus::witness_budget);
  SearchBudget none;
  none.max_witnesses = 0;
  const MapStream empty = enumerate_multiplicative_bijections(k, k, 2, none);
  EXPECT_TRUE(empty.items.empty());
  EXPECT_EQ(empty.terminator.status, SearchStatus::witness_budget);
}

TEST(SearchDeterminism, RepeatedAndParallelRunsAgree) {
  const auto k = fixtures::jordan_m2(Field::prime(3));
  const MapStream a = enumerate_multiplicative_bijections(k, k, 2, {});
  const MapStream b = enumerate_multiplicative_bijections(k, k, 2, {});
  const MapStream c = enumerate_multiplicative_bijections(k, k, 2, {}, SearchOptions{3});
  ASSERT_EQ(a.items.size(), b.items.size());
  ASSERT_EQ(a.items.size(), c.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    EXPECT_EQ(a.items[i], b.items[i]);
    EXPECT_EQ(a.items[i], c.items[i]);
  }
  EXPECT_EQ(a.terminator.nodes, b.terminator.nodes);
  EXPECT_TRUE(c.terminator.exhausted());
  const DerivationStream d1 = enumerate_n_derivations(k, 2, {});
  const DerivationStream d2 = enumerate_n_derivations(k, 2, {}, std::nullopt, SearchOptions{2});
  ASSERT_EQ(d1.items.size(), d2.items.size());
  for (std::size_t i = 0; i < d1.items.size(); ++i) EXPECT_EQ(d1.items[i], d2.items[i]);
}

TEST(SearchDerivations, JordanMatrixUnitsOverF3) {
  const Field f = Field::prime(3);
  const auto k = fixtures::jordan_m2(f);
  const DerivationStream s = enumerate_n_derivations(k, 2, {});
  EXPECT_TRUE(s.terminator.exhausted());
  EXPECT_EQ(s.items.size(), 27u);
  const auto found = tables(s);
  EXPECT_EQ(found.size(), s.items.size());
  EXPECT_TRUE(found.count(linear_table(k, Matrix(f, 4, 4))));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_TRUE(found.count(linear_table(k, inner_derivation(*k, k->basis(i), k->basis(j)))));
  Matrix planted(f, 4, 4);
  planted(0, 0) = f.one();
  EXPECT_FALSE(found.count(linear_table(k, planted)));
  for (const auto& d : s.items) EXPECT_TRUE(is_n_derivation(d, 2));
  const auto decomposition = peirce_decompose(*k, k->basis(0));
  const AuditReport audit = additivity_audit(s, decomposition);
  EXPECT_TRUE(audit.all_additive);
  EXPECT_TRUE(audit.exhausted);
}

TEST(SearchDerivations, SeededSearchEqualsUnseeded) {
  const auto k = fixtures::jordan_m2(Field::prime(3));
  const auto decomposition = peirce_decompose(*k, k->basis(0));
  const auto unseeded = tables(enumerate_n_derivations(k, 2, {}));
  const DerivationStream seeded = enumerate_n_derivations(k, 2, {}, decomposition);
  EXPECT_EQ(tables(seeded), unseeded);
  for (const auto& d : seeded.items) EXPECT_TRUE(in_component(decomposition, d.apply(k->basis(0)), Component::half));
}

TEST(SearchDerivations, CompleteAgainstFunctionFilter) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field f = Field::prime(p);
    for (const auto& a : {diagonal_algebra(f, 1), zero_algebra(f, 1)}) {
      const auto expected = oracle::derivations(oracle::Table::of(*a));
      const DerivationStream s = enumerate_n_derivations(a, 2, {});
      EXPECT_EQ(tables(s), std::set<Table>(expected.begin(), expected.end())) << a->name() << " p=" << p;
    }
  }
  const auto dual = fixtures::dual_numbers(Field::prime(3));
  for (const auto& d : enumerate_n_derivations(dual, 2, {}).items) EXPECT_TRUE(is_n_derivation(d, 2));
}

TEST(SearchDerivations, ArityThreeContainsDerivations) {
  const auto a = fixtures::dual_numbers(Field::prime(3));
  const auto two = tables(enumerate_n_derivations(a, 2, {}));
  const DerivationStream three = enumerate_n_derivations(a, 3, {});
  for (const auto& d : three.items) EXPECT_TRUE(is_n_derivation(d, 3));
  const auto found = tables(three);
  for (const auto& t : two) EXPECT_TRUE(found.count(t));
}

TEST(SearchAudit, RecordsHypotheses) {
  const auto sum = diagonal_algebra(Field::prime(3), 2);
  const auto decomposition = peirce_decompose(*sum, sum->basis(0));
  const AuditReport audit = additivity_audit(enumerate_multiplicative_bijections(sum, sum, 2, {}), decomposition);
  ASSERT_TRUE(audit.hypothesis_record.has_value());
  EXPECT_FALSE(audit.hypothesis_record->cond_i);
  EXPECT_TRUE(audit.exhausted);
}
