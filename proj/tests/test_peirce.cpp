#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jordan/carrier.hpp"
#include "jordan/error.hpp"
#include "jordan/peirce.hpp"
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

std::vector<oracle::Vec> vecs(const std::vector<Element>& basis) {
  std::vector<oracle::Vec> out;
  for (const auto& b : basis) out.push_back(oracle::of(b));
  return out;
}

}  // namespace

TEST(Peirce, JordanMatrixUnitsComponents) {
  for (const Field& f : {Field::rational(), Field::prime(3), Field::prime(5)}) {
    const auto k = fixtures::jordan_m2(f);
    const auto d = peirce_decompose(*k, k->basis(0));
    ASSERT_EQ(d.dim(Component::one), 1u);
    ASSERT_EQ(d.dim(Component::half), 2u);
    ASSERT_EQ(d.dim(Component::zero), 1u);
    EXPECT_EQ(d.basis(Component::one)[0], k->basis(0));
    EXPECT_EQ(d.basis(Component::half)[0], k->basis(1));
    EXPECT_EQ(d.basis(Component::half)[1], k->basis(2));
    EXPECT_EQ(d.basis(Component::zero)[0], k->basis(3));
    EXPECT_TRUE(verify_peirce_relations(d).all_hold());
    EXPECT_EQ(verify_peirce_relations(d).relations.size(), 5u);
    EXPECT_TRUE(check_theorem_conditions(d).all());
  }
}

TEST(Peirce, ComponentsMatchEigenvectorScan) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto k = fixtures::jordan_m2(Field::prime(p));
    const oracle::Table t = oracle::Table::of(*k);
    const FiniteCarrier c(k);
    for (const Element& e : {k->basis(0), k->basis(3)}) {
      const auto d = peirce_decompose(*k, e);
      const std::uint32_t lambdas[] = {1, oracle::inverse_mod(2, p), 0};
      for (std::size_t i = 0; i < 3; ++i) {
        std::vector<Vector> basis;
        for (const auto& v : d.basis(kComponents[i])) basis.push_back(v.coords());
        std::vector<oracle::Vec> from_library;
        for (auto x : c.span_elements(basis)) from_library.push_back(oracle::of(c.decode(x)));
        EXPECT_EQ(from_library, oracle::eigenset(t, oracle::of(e), lambdas[i]));
      }
    }
  }
}

TEST(Peirce, PreconditionErrors) {
  const auto q = Field::rational();
  const auto k = fixtures::jordan_m2(q);
  expect_error(ErrorCode::NotIdempotent, [&] { peirce_decompose(*k, k->parse_element("1,0,0,1")); });
  expect_error(ErrorCode::NotIdempotent, [&] { peirce_decompose(*k, k->zero()); });
  expect_error(ErrorCode::NotIdempotent, [&] { peirce_decompose(*k, k->parse_element("2,0,0,0")); });
  const auto m2 = matrix_units_algebra(q);
  expect_error(ErrorCode::NoncommutativeDomain, [&] { peirce_decompose(*m2, m2->basis(0)); });
  expect_error(ErrorCode::CharacteristicUnsupported,
               [] { peirce_decompose(*diagonal_algebra(Field::prime(2), 2), diagonal_algebra(Field::prime(2), 2)->basis(0)); });
  // e b = b/3 leaves an eigenvalue outside {1, 1/2, 0}.
  const std::vector<ProductEntry> p{{0, 0, 0, q.one()}, {0, 1, 1, q.from_rational(mpq_class(1, 3))},
                                    {1, 0, 1, q.from_rational(mpq_class(1, 3))}};
  const auto odd = Algebra::create("odd", q, {"e", "b"}, p);
  expect_error(ErrorCode::DecompositionIncomplete, [&] { peirce_decompose(*odd, odd->basis(0)); });
}

TEST(Peirce, SymmetrizedOnMatrixUnits) {
  const auto m2 = matrix_units_algebra(Field::rational());
  const auto d = peirce_decompose(*m2, m2->basis(0), PeirceOptions{true});
  EXPECT_TRUE(d.symmetrized());
  EXPECT_EQ(d.dim(Component::one), 1u);
  EXPECT_EQ(d.dim(Component::half), 2u);
  EXPECT_EQ(d.dim(Component::zero), 1u);
}

TEST(Peirce, PlantedRelationFailure) {
  const auto a = fixtures::planted_relation_failure(Field::rational());
  ASSERT_TRUE(is_commutative(*a));
  ASSERT_FALSE(identity_report(*a).jordan);
  const auto d = peirce_decompose(*a, a->basis(0));
  const auto report = verify_peirce_relations(d);
  EXPECT_FALSE(report.all_hold());
  const auto& rel = report.relations[3];
  EXPECT_EQ(rel.name, "(J1+J0)J1/2 in J1/2");
  ASSERT_FALSE(rel.holds);
  ASSERT_TRUE(rel.witness.has_value());
  // Projection check: the product has a nonzero J1 part.
  const Element product = multiply(*a, rel.witness->first, rel.witness->second);
  EXPECT_FALSE(peirce_project(d, product).one.is_zero());
}

TEST(Peirce, DirectSumViolatesConditionOne) {
  const auto a = diagonal_algebra(Field::prime(3), 2);
  const auto d = peirce_decompose(*a, a->basis(0));
  EXPECT_EQ(d.dim(Component::half), 0u);
  const auto t = check_theorem_conditions(d);
  EXPECT_FALSE(t.cond_i);
  ASSERT_TRUE(t.witness_i.has_value());
  EXPECT_FALSE(t.witness_i->is_zero());
  EXPECT_TRUE(in_component(d, *t.witness_i, Component::one) || in_component(d, *t.witness_i, Component::zero));
  EXPECT_TRUE(t.cond_ii);
  EXPECT_TRUE(t.cond_iii);
}

TEST(PeirceProperty, ConditionsAgreeWithQuantifierEnumeration) {
  std::vector<std::pair<AlgebraPtr, Element>> cases;
  for (std::uint32_t p : {3u, 5u}) {
    const auto k = fixtures::jordan_m2(Field::prime(p));
    cases.emplace_back(k, k->basis(0));
    cases.emplace_back(k, k->basis(3));
  }
  const auto sum = diagonal_algebra(Field::prime(3), 2);
  cases.emplace_back(sum, sum->basis(0));
  const auto planted = fixtures::planted_relation_failure(Field::prime(5));
  cases.emplace_back(planted, planted->basis(0));
  for (const auto& [a, e] : cases) {
    const oracle::Table t = oracle::Table::of(*a);
    const auto d = peirce_decompose(*a, e);
    const auto j1 = oracle::span(t, vecs(d.basis(Component::one)));
    const auto jh = oracle::span(t, vecs(d.basis(Component::half)));
    const auto j0 = oracle::span(t, vecs(d.basis(Component::zero)));
    std::vector<oracle::Vec> j1_or_j0 = j1;
    j1_or_j0.insert(j1_or_j0.end(), j0.begin(), j0.end());
    const auto c = check_theorem_conditions(d);
    EXPECT_EQ(c.cond_i, !oracle::has_annihilated(t, j1_or_j0, jh)) << a->name();
    EXPECT_EQ(c.cond_ii, !oracle::has_annihilated(t, j0, j0)) << a->name();
    EXPECT_EQ(c.cond_iii, !oracle::has_annihilated(t, jh, j0)) << a->name();
  }
}

TEST(PeirceProperty, ProjectionSplitsEveryElement) {
  std::mt19937 rng(17);
  const Field q = Field::rational();
  const auto k = fixtures::jordan_m2(q);
  const auto d = peirce_decompose(*k, k->basis(0));
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    Vector v;
    for (int i = 0; i < 4; ++i) v.push_back(q.from_rational(mpq_class(num(rng), den(rng))));
    const Element x = k->element(v);
    const PeirceParts parts = peirce_project(d, x);
    EXPECT_EQ(parts.one + parts.half + parts.zero, x);
    for (Component c : kComponents) EXPECT_TRUE(in_component(d, parts[c], c));
    // e x = x1 + x_half / 2
    EXPECT_EQ(multiply(*k, k->basis(0), x), parts.one + q.from_rational(mpq_class(1, 2)) * parts.half);
  }
}

TEST(Idempotents, ExhaustiveCountOnMatrixUnitsOverF3) {
  const auto m2 = matrix_units_algebra(Field::prime(3));
  const auto found = find_idempotents(*m2, IdempotentSearch::exhaustive);
  const oracle::Table t = oracle::Table::of(*m2);
  std::size_t expected = 0;
  for (const auto& x : oracle::elements(3, 4)) expected += !oracle::is_zero(x) && t.mul(x, x) == x;
  EXPECT_EQ(found.size(), expected);
  EXPECT_EQ(found.size(), 13u);
  std::size_t trivial = 0;
  for (const auto& c : found) trivial += c.kind == IdempotentClass::trivial_identity;
  EXPECT_EQ(trivial, 1u);
  EXPECT_TRUE(std::is_sorted(found.begin(), found.end(),
                             [](const auto& l, const auto& r) { return l.element < r.element; }));
}

TEST(Idempotents, HeuristicFindsZeroOneVectors) {
  const auto k = fixtures::jordan_m2(Field::rational());
  const auto found = find_idempotents(*k, IdempotentSearch::heuristic);
  // Oracle over F5: a 0/1 vector is idempotent over Q iff it is over F5 for this table (constants 0, 1, 1/2).
  const auto k5 = fixtures::jordan_m2(Field::prime(5));
  const oracle::Table t = oracle::Table::of(*k5);
  std::vector<oracle::Vec> expected;
  for (const auto& x : oracle::elements(5, 4)) {
    if (oracle::is_zero(x) || std::any_of(x.begin(), x.end(), [](auto c) { return c > 1; })) continue;
    if (t.mul(x, x) == x) expected.push_back(x);
  }
  ASSERT_EQ(found.size(), expected.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    Vector v;
    for (auto c : expected[i]) v.push_back(k->field().from_int(c));
    EXPECT_EQ(found[i].element, k->element(v));
  }
  std::vector<Element> elements;
  for (const auto& c : found) elements.push_back(c.element);
  for (const char* want : {"0,0,0,1", "1,0,0,0", "1,0,0,1"})
    EXPECT_NE(std::find(elements.begin(), elements.end(), k->parse_element(want)), elements.end()) << want;
  std::size_t trivial = 0;
  for (const auto& c : found) trivial += c.kind == IdempotentClass::trivial_identity;
  EXPECT_EQ(trivial, 1u);
  // Idempotents with non 0/1 coordinates are only found when registered.
  const std::vector<Element> extra{k->parse_element("1/2,1/2,1/2,1/2")};
  EXPECT_EQ(find_idempotents(*k, IdempotentSearch::heuristic, extra).size(), found.size() + 1);
  expect_error(ErrorCode::ModeUnsupported, [&] { find_idempotents(*k, IdempotentSearch::exhaustive); });
}

TEST(Idempotents, Classification) {
  const auto k = fixtures::jordan_m2(Field::rational());
  EXPECT_EQ(idempotent_class(*k, k->zero()), IdempotentClass::zero);
  EXPECT_EQ(idempotent_class(*k, k->basis(1)), IdempotentClass::not_idempotent);
  EXPECT_EQ(idempotent_class(*k, k->parse_element("1,0,0,1")), IdempotentClass::trivial_identity);
  EXPECT_EQ(idempotent_class(*k, k->basis(0)), IdempotentClass::nontrivial);
}
