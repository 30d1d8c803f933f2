#include <gtest/gtest.h>

#include <random>

#include "coxnorm/coxnorm.hpp"
#include "test_support.hpp"

namespace coxnorm {
namespace {

using testing::Key;

GroupPtr dihedral(unsigned m) { return make_group(CoxeterMatrix::dihedral(m)); }

GroupElement el(const GroupPtr& G, std::initializer_list<int> one_based) {
  Word w;
  for (int s : one_based) w.push_back(static_cast<Generator>(s - 1));
  return G->reduce(w);
}

double max_diff(const GroupFunction& a, const GroupFunction& b) {
  double d = 0.0;
  for (const auto& [g, c] : a.terms()) d = std::max(d, std::abs(c - b(g)));
  for (const auto& [g, c] : b.terms()) d = std::max(d, std::abs(c - a(g)));
  return d;
}

TEST(GroupFunctionTest, PrunesExactZeros) {
  auto G = dihedral(3);
  GroupFunction f(G);
  f.add(el(G, {1}), 1.0);
  f.add(el(G, {1}), -1.0);
  f.add(el(G, {2}), 0.0);
  EXPECT_TRUE(f.is_zero());
  f.add(el(G, {2}), 1e-300);
  EXPECT_EQ(f.support_size(), 1u);  // no epsilon pruning
  EXPECT_TRUE((0.0 * f).is_zero());
}

TEST(GroupFunctionTest, ContextMismatch) {
  auto a = dihedral(3), b = dihedral(4), a_again = dihedral(3);
  auto fa = GroupFunction::delta(a, a->identity());
  auto fb = GroupFunction::delta(b, b->identity());
  EXPECT_THROW(convolve(fa, fb), ContextMismatch);
  EXPECT_THROW(fa + fb, ContextMismatch);
  EXPECT_NO_THROW(convolve(fa, GroupFunction::delta(a_again, a_again->identity())));
}

TEST(ConvolveTest, SpecExamples) {
  auto G = dihedral(3);
  auto s = GroupFunction::delta(G, el(G, {1}));
  EXPECT_EQ(convolve(s, s), GroupFunction::delta(G, G->identity()));

  auto f = s + GroupFunction::delta(G, el(G, {2}), Complex(0.0, 2.0));
  EXPECT_EQ(convolve(f, GroupFunction::delta(G, G->identity())), f);

  auto lhs = convolve(GroupFunction::delta(G, el(G, {1})) + GroupFunction::delta(G, el(G, {2})),
                      GroupFunction::delta(G, el(G, {1})));
  auto rhs = GroupFunction::delta(G, G->identity()) + GroupFunction::delta(G, el(G, {2, 1}));
  EXPECT_EQ(lhs, rhs);
}

// Convolution computed entirely in the faithful model: support points
// become model keys and products are evaluated by word concatenation.
std::map<Key, Complex> model_convolution(const testing::TestGroup& tg, const GroupFunction& f,
                                         const GroupFunction& h) {
  std::map<Key, Complex> out;
  for (const auto& [x, a] : f.terms())
    for (const auto& [z, b] : h.terms()) out[tg.eval(testing::concat(x.word(), z.word()))] += a * b;
  std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < 1e-14; });
  return out;
}

TEST(ConvolveTest, AgreesWithModelConvolution) {
  std::mt19937_64 rng(3);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    const auto pool = G->ball(3).elements;
    for (int trial = 0; trial < 20; ++trial) {
      auto f = testing::random_function(G, pool, 5, rng);
      auto h = testing::random_function(G, pool, 5, rng);
      auto expected = model_convolution(tg, f, h);
      auto got = convolve(f, h);
      std::map<Key, Complex> got_keys;
      for (const auto& [g, c] : got.terms())
        if (std::abs(c) >= 1e-14) got_keys[tg.eval(g.word())] += c;
      ASSERT_EQ(got_keys.size(), expected.size()) << tg.name;
      for (const auto& [k, c] : expected) ASSERT_LT(std::abs(got_keys[k] - c), 1e-12);
      for (const auto& [g, c] : got.terms())
        ASSERT_LE(g.length(), f.max_length() + h.max_length());
    }
  }
}

TEST(ConvolveTest, AlgebraicLaws) {
  std::mt19937_64 rng(5);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    const auto pool = G->ball(3).elements;
    for (int trial = 0; trial < 20; ++trial) {
      auto f = testing::random_function(G, pool, 4, rng);
      auto g = testing::random_function(G, pool, 4, rng);
      auto h = testing::random_function(G, pool, 4, rng);
      EXPECT_LT(max_diff(convolve(convolve(f, g), h), convolve(f, convolve(g, h))), 1e-12);
      EXPECT_LT(max_diff(adjoint(convolve(f, h)), convolve(adjoint(h), adjoint(f))), 1e-12);
      EXPECT_LT(max_diff(convolve(f, g + h), convolve(f, g) + convolve(f, h)), 1e-12);
      const auto nf = norms(f, 0), nh = norms(h, 0);
      EXPECT_LE(nf.l2, nf.l1);
      EXPECT_LE(norms(convolve(f, h), 0).l2, nf.l1 * nh.l2 + 1e-12);
    }
  }
}

TEST(ConvolveTest, Deterministic) {
  std::mt19937_64 rng(9);
  auto G = make_group(CoxeterMatrix::uniform(3, 3));
  const auto pool = G->ball(3).elements;
  auto f = testing::random_function(G, pool, 8, rng);
  auto h = testing::random_function(G, pool, 8, rng);
  EXPECT_EQ(convolve(f, h), convolve(f, h));
}

TEST(AdjointTest, SpecExamples) {
  auto G = dihedral(3);
  auto e = GroupFunction::delta(G, G->identity());
  EXPECT_EQ(adjoint(e), e);
  auto f = GroupFunction::delta(G, el(G, {1, 2}), Complex(0.0, 1.0));
  EXPECT_EQ(adjoint(f), GroupFunction::delta(G, el(G, {2, 1}), Complex(0.0, -1.0)));

  std::mt19937_64 rng(1);
  const auto pool = G->ball(3).elements;
  for (int i = 0; i < 20; ++i) {
    auto r = testing::random_function(G, pool, 4, rng);
    EXPECT_EQ(adjoint(adjoint(r)), r);
    EXPECT_DOUBLE_EQ(norms(adjoint(r), 0).l2, norms(r, 0).l2);
  }
}

TEST(PointwiseMulTest, SpecExamples) {
  auto G = dihedral(3);
  std::mt19937_64 rng(2);
  auto f = testing::random_function(G, G->ball(3).elements, 4, rng);
  EXPECT_EQ(pointwise_mul([](const GroupElement&) { return 1.0; }, f), f);

  const auto g = el(G, {1, 2});
  EXPECT_EQ(pointwise_mul(HeatWeight{0.3}, GroupFunction::delta(G, g)),
            GroupFunction::delta(G, g, std::exp(-0.3 * 2.0)));
  EXPECT_TRUE(pointwise_mul(LengthWeight{}, GroupFunction::delta(G, G->identity())).is_zero());
}

TEST(PointwiseMulTest, ExponentialLaw) {
  // exp(-t l) exp(-s l) and exp(-(t+s) l) are equal up to rounding of the
  // exponential itself; the two sides differ by at most a few ulps.
  std::mt19937_64 rng(4);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    auto f = testing::random_function(G, G->ball(4).elements, 10, rng);
    for (double t : {0.1, 0.5, 1.0})
      for (double s : {0.01, 0.25, 2.0}) {
        auto a = pointwise_mul(HeatWeight{t}, pointwise_mul(HeatWeight{s}, f));
        auto b = pointwise_mul(HeatWeight{t + s}, f);
        ASSERT_EQ(a.support_size(), b.support_size());
        for (const auto& [g, c] : a.terms())
          ASSERT_LE(std::abs(c - b(g)), 8 * std::numeric_limits<double>::epsilon() * std::abs(c));
      }
  }
}

TEST(NormsTest, SpecExamples) {
  auto G = dihedral(CoxeterMatrix::kInfinity);
  for (unsigned k : {0u, 1u, 5u}) {
    auto n = norms(GroupFunction::delta(G, G->identity()), k);
    EXPECT_EQ(n.l1, 1.0);
    EXPECT_EQ(n.l2, 1.0);
    EXPECT_EQ(n.sobolev, 1.0);
  }
  auto f = GroupFunction::delta(G, el(G, {1})) + GroupFunction::delta(G, el(G, {2}));
  auto n = norms(f, 1);
  EXPECT_DOUBLE_EQ(n.l1, 2.0);
  EXPECT_DOUBLE_EQ(n.l2, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(n.sobolev, std::sqrt(8.0));
  EXPECT_EQ(norms(GroupFunction(G), 3).sobolev, 0.0);
}

TEST(NormsTest, SobolevMonotoneInK) {
  std::mt19937_64 rng(6);
  for (const auto& tg : testing::all_test_groups()) {
    auto G = make_group(tg.matrix);
    auto f = testing::random_function(G, G->ball(4).elements, 6, rng);
    EXPECT_EQ(norms(f, 0).sobolev, norms(f, 0).l2);
    for (unsigned k = 0; k < 5; ++k) EXPECT_LE(norms(f, k).sobolev, norms(f, k + 1).sobolev);
  }
}

TEST(ParseFunctionTest, ReducesAndSums) {
  auto G = dihedral(3);
  auto f = parse_group_function("# comment\n2-1-2 0.5 0\n1-2-1 0.25 1\ne 1 0\n1-1 1 0\n", G);
  EXPECT_EQ(f(el(G, {1, 2, 1})), Complex(0.75, 1.0));
  EXPECT_EQ(f(G->identity()), Complex(2.0, 0.0));
  EXPECT_EQ(f.support_size(), 2u);
}

TEST(ParseFunctionTest, RejectsMalformedLines) {
  auto G = dihedral(3);
  EXPECT_THROW(parse_group_function("1 0.5\n", G), ParseError);
  EXPECT_THROW(parse_group_function("1 0.5 0 7\n", G), ParseError);
  EXPECT_THROW(parse_group_function("1 x 0\n", G), ParseError);
  EXPECT_THROW(parse_group_function("3 1 0\n", G), ParseError);
  EXPECT_THROW(parse_group_function("1 inf 0\n", G), ParseError);
}

}  // namespace
}  // namespace coxnorm
