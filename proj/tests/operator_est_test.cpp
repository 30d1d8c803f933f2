#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "coxnorm/coxnorm.hpp"
#include "test_support.hpp"

namespace coxnorm {
namespace {

GroupElement el(const GroupPtr& G, std::initializer_list<int> one_based) {
  Word w;
  for (int s : one_based) w.push_back(static_cast<Generator>(s - 1));
  return G->reduce(w);
}

GroupFunction path_fn(const GroupPtr& G) {
  return GroupFunction::delta(G, el(G, {1})) + GroupFunction::delta(G, el(G, {2}));
}

double path_norm(std::size_t vertices) {
  return 2.0 * std::cos(std::numbers::pi / static_cast<double>(vertices + 1));
}

TEST(LinalgTest, JacobiOnKnownSpectrum) {
  // Path P_5 adjacency: eigenvalues 2 cos(k pi / 6).
  Matrix<double> a(5, 5);
  for (std::size_t i = 0; i + 1 < 5; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
  auto ev = jacobi_eigenvalues(a);
  for (std::size_t k = 1; k <= 5; ++k)
    EXPECT_NEAR(ev[5 - k], 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / 6.0), 1e-13);
}

TEST(LinalgTest, HermitianEmbedding) {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  Matrix<Complex> h(2, 2);
  h(0, 0) = h(1, 1) = 2.0;
  h(0, 1) = Complex(0.0, 1.0);
  h(1, 0) = Complex(0.0, -1.0);
  auto ev = hermitian_eigenvalues(h);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-13);
  EXPECT_NEAR(ev[1], 3.0, 1e-13);
}

TEST(LinalgTest, PowerIterationReportsNonConvergence) {
  Matrix<Complex> m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 0.5;
  PowerOptions opt;
  opt.max_iterations = 3;
  auto r = largest_singular_value(m, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_GT(r.sigma, 0.9);
  EXPECT_LE(r.sigma, 1.0);
}

TEST(LinalgTest, PowerIterationFromOrthogonalStart) {
  // The start vector of B2 compressions is orthogonal to the parity
  // character; the dense check still finds sigma_max.
  auto b2 = make_group(CoxeterMatrix::dihedral(4));
  auto f = GroupFunction::delta(b2, el(b2, {1}), 2.0) + GroupFunction::delta(b2, el(b2, {2}));
  f += GroupFunction::delta(b2, b2->identity(), -0.5);
  auto m = compression(f, 4);
  EXPECT_NEAR(compressed_norm(m), exact_norm_finite_group(f), 1e-10);
  EXPECT_NEAR(compressed_norm(m), 3.5, 1e-10);  // parity character value |-0.5 - 2 - 1|
}

TEST(CompressionTest, SpecExamples) {
  auto a2 = make_group(CoxeterMatrix::dihedral(3));
  auto m = compression(GroupFunction::delta(a2, el(a2, {1})), 1);
  ASSERT_EQ(m.basis.size(), 3u);
  EXPECT_TRUE(m.basis[0].is_identity());
  EXPECT_EQ(m.basis[1], el(a2, {1}));
  for (std::size_t z = 0; z < 3; ++z)
    for (std::size_t x = 0; x < 3; ++x)
      EXPECT_EQ(m.entries(z, x), ((z == 0 && x == 1) || (z == 1 && x == 0)) ? 1.0 : 0.0);

  auto zero = compression(GroupFunction(a2), 2);
  EXPECT_EQ(max_abs_entry(zero.entries), 0.0);
  EXPECT_EQ(compressed_norm(zero), 0.0);

  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  auto p = compression(path_fn(dinf), 1);  // basis e, [1], [2]
  const double expected[3][3] = {{0, 1, 1}, {1, 0, 0}, {1, 0, 0}};
  for (std::size_t z = 0; z < 3; ++z)
    for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(p.entries(z, x), expected[z][x]);
}

TEST(CompressionTest, EntriesMatchModel) {
  // M[z][x] = f(z x^-1), checked through the faithful model.
  std::mt19937_64 rng(21);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    auto f = testing::random_function(G, G->ball(3).elements, 5, rng);
    std::map<testing::Key, Complex> by_key;
    for (const auto& [g, c] : f.terms()) by_key[tg.eval(g.word())] = c;
    auto m = compression(f, 2);
    for (std::size_t z = 0; z < m.basis.size(); ++z)
      for (std::size_t x = 0; x < m.basis.size(); ++x) {
        auto key = tg.eval(testing::concat(m.basis[z].word(), testing::reversed(m.basis[x].word())));
        auto it = by_key.find(key);
        ASSERT_EQ(m.entries(z, x), it == by_key.end() ? Complex{} : it->second);
      }
  }
}

TEST(CompressionTest, HermitianForSelfAdjointSymbol) {
  std::mt19937_64 rng(22);
  auto G = make_group(CoxeterMatrix::uniform(3, 3));
  auto f = testing::random_function(G, G->ball(3).elements, 6, rng);
  auto sa = f + adjoint(f);
  auto m = compression(sa, 3);
  for (std::size_t i = 0; i < m.basis.size(); ++i)
    for (std::size_t j = 0; j < m.basis.size(); ++j)
      ASSERT_LT(std::abs(m.entries(i, j) - std::conj(m.entries(j, i))), 1e-12);
}

TEST(CompressedNormTest, PathGraphs) {
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  auto f = path_fn(dinf);
  EXPECT_NEAR(compressed_norm(compression(f, 1)), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(compressed_norm(compression(f, 2)), std::sqrt(3.0), 1e-12);
  double prev = 0.0;
  for (std::size_t n = 0; n <= 12; ++n) {
    const double v = compressed_norm(compression(f, n));
    EXPECT_NEAR(v, path_norm(2 * n + 1), 1e-8) << "N = " << n;
    EXPECT_GE(v, prev - 1e-10);
    prev = v;
  }
}

TEST(CompressedNormTest, HermitianMatchesSpectralRadius) {
  std::mt19937_64 rng(23);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = testing::random_function(G, G->ball(2).elements, 4, rng);
      auto m = compression(f + adjoint(f), 2);
      auto ev = hermitian_eigenvalues(m.entries);
      const double rho = std::max(std::abs(ev.front()), std::abs(ev.back()));
      EXPECT_NEAR(compressed_norm(m), rho, 1e-10 * std::max(1.0, rho)) << tg.name;
    }
  }
}

TEST(CompressedNormTest, MonotoneAndBelowL1) {
  std::mt19937_64 rng(24);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    for (int trial = 0; trial < 3; ++trial) {
      auto f = testing::random_function(G, G->ball(2).elements, 4, rng);
      const double l1 = norms(f, 0).l1;
      const std::size_t top = tg.matrix.rank() == 3 ? 4 : 6;
      double prev = 0.0;
      for (std::size_t n = 0; n <= top; ++n) {
        const double v = compressed_norm(compression(f, n));
        ASSERT_GE(v, prev - 1e-10) << tg.name << " N = " << n;
        ASSERT_LE(v, l1 + 1e-10);
        prev = v;
      }
    }
  }
}

TEST(NormIntervalTest, SpecExamples) {
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  auto d1 = norm_interval(GroupFunction::delta(dinf, el(dinf, {1})), 3);
  EXPECT_DOUBLE_EQ(d1.lower, 1.0);
  EXPECT_DOUBLE_EQ(d1.upper, 1.0);
  auto de = norm_interval(GroupFunction::delta(dinf, dinf->identity()), 0);
  EXPECT_DOUBLE_EQ(de.lower, 1.0);
  EXPECT_DOUBLE_EQ(de.upper, 1.0);
  auto p = norm_interval(path_fn(dinf), 2);
  EXPECT_NEAR(p.lower, std::sqrt(3.0), 1e-12);
  EXPECT_EQ(p.upper, 2.0);
  EXPECT_EQ(p.radius, 2u);
}

TEST(NormIntervalTest, Invariants) {
  std::mt19937_64 rng(25);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    for (int trial = 0; trial < 10; ++trial) {
      auto f = testing::random_function(G, G->ball(3).elements, 5, rng);
      auto r = norm_interval(f, 2);
      const auto n = norms(f, 0);
      EXPECT_GE(r.lower, 0.0);
      EXPECT_LE(r.lower, r.upper);
      EXPECT_GE(r.lower, n.l2);
      EXPECT_EQ(r.upper, n.l1);
    }
  }
}

TEST(OracleNormTest, SpecExamples) {
  auto a2 = make_group(CoxeterMatrix::dihedral(3));
  EXPECT_NEAR(exact_norm_finite_group(path_fn(a2)), 2.0, 1e-10);
  for (const auto& g : a2->ball(3).elements)
    EXPECT_NEAR(exact_norm_finite_group(GroupFunction::delta(a2, g)), 1.0, 1e-10);
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  EXPECT_THROW(exact_norm_finite_group(path_fn(dinf)), GroupNotFinite);
}

TEST(OracleNormTest, B2PathIsOctagon) {
  // Cayley graph of B2 with its two generators is an 8-cycle.
  auto b2 = make_group(CoxeterMatrix::dihedral(4));
  EXPECT_NEAR(exact_norm_finite_group(path_fn(b2)), 2.0, 1e-10);
  // delta_s - delta_t: on the bipartite cycle the norm is still 2.
  auto diff = GroupFunction::delta(b2, el(b2, {1})) - GroupFunction::delta(b2, el(b2, {2}));
  EXPECT_NEAR(exact_norm_finite_group(diff), 2.0, 1e-10);
}

TEST(OracleNormTest, StabilizedCompressionAgrees) {
  std::mt19937_64 rng(26);
  for (unsigned m : {3u, 4u}) {
    auto G = make_group(CoxeterMatrix::dihedral(m));
    const std::size_t top = m;  // longest element has length m
    for (int trial = 0; trial < 10; ++trial) {
      auto f = testing::random_function(G, G->ball(top).elements, 4, rng);
      EXPECT_NEAR(compressed_norm(compression(f, top)), exact_norm_finite_group(f), 1e-8);
    }
  }
}

TEST(GramPsdTest, SpecExamples) {
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  auto r0 = gram_psd(*dinf, 1.0, 0);
  EXPECT_EQ(r0.dimension, 1u);
  EXPECT_DOUBLE_EQ(r0.min_eigenvalue, 1.0);
  auto r1 = gram_psd(*dinf, std::log(2.0), 1);
  EXPECT_NEAR(r1.min_eigenvalue, (2.25 - std::sqrt(2.0625)) / 2.0, 1e-12);
  EXPECT_NEAR(r1.min_eigenvalue, 0.40693, 1e-5);
  EXPECT_TRUE(r1.verdict);
  auto a2 = make_group(CoxeterMatrix::dihedral(3));
  EXPECT_TRUE(gram_psd(*a2, 0.5, 3).verdict);
  EXPECT_THROW(gram_psd(*a2, 0.0, 1), DomainError);
}

TEST(GramPsdTest, AllGroups) {
  for (const auto& tg : testing::all_test_groups()) {
    CoxeterGroup G(tg.matrix);
    for (double t : {0.1, 0.5, 1.0, 2.0})
      for (std::size_t n = 0; n <= 3; ++n) {
        auto r = gram_psd(G, t, n);
        EXPECT_TRUE(r.verdict) << tg.name << " t=" << t << " N=" << n << " min " << r.min_eigenvalue;
      }
  }
}

TEST(NegdefTest, SpecExamples) {
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  auto r = negdef_check(*dinf, 1);
  EXPECT_NEAR(r.max_eigenvalue, -2.0 / 3.0, 1e-12);
  EXPECT_TRUE(r.verdict);
  auto r0 = negdef_check(*dinf, 0);
  EXPECT_TRUE(r0.verdict);
  EXPECT_EQ(r0.max_eigenvalue, 0.0);

  // Quadratic form of (2,-1,-1) against L = [[0,1,1],[1,0,2],[1,2,0]].
  const double L[3][3] = {{0, 1, 1}, {1, 0, 2}, {1, 2, 0}};
  const double v[3] = {2, -1, -1};
  double q = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q += v[i] * L[i][j] * v[j];
  EXPECT_EQ(q, -4.0);
}

TEST(NegdefTest, AllGroups) {
  for (const auto& tg : testing::all_test_groups()) {
    CoxeterGroup G(tg.matrix);
    for (std::size_t n = 0; n <= 3; ++n) EXPECT_TRUE(negdef_check(G, n).verdict) << tg.name;
  }
}

TEST(NegdefTest, StrictlyNegativeOnInfiniteDihedral) {
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_LT(negdef_check(*dinf, n).max_eigenvalue, 0.0);
}

TEST(SchurTest, SpecExamples) {
  auto dinf = make_group(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity));
  for (double t : {0.01, 0.5, 3.0}) {
    auto r = schur_contraction_check(t, path_fn(dinf), 1);
    EXPECT_NEAR(r.lhs, std::exp(-t) * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(r.rhs, std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(r.verdict);
  }
  auto a2 = make_group(CoxeterMatrix::dihedral(3));
  auto f = GroupFunction::delta(a2, a2->identity()) + GroupFunction::delta(a2, el(a2, {1, 2, 1}));
  EXPECT_TRUE(schur_contraction_check(1.0, f, 3).verdict);
  EXPECT_THROW(schur_contraction_check(0.0, f, 3), DomainError);
}

TEST(SchurTest, SmallTApproachesRhs) {
  std::mt19937_64 rng(27);
  auto G = make_group(CoxeterMatrix::uniform(3, CoxeterMatrix::kInfinity));
  auto f = testing::random_function(G, G->ball(2).elements, 5, rng);
  auto r = schur_contraction_check(1e-9, f, 2);
  EXPECT_NEAR(r.lhs, r.rhs, 1e-7);
}

}  // namespace
}  // namespace coxnorm
