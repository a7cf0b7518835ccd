#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/sampling.hpp"
#include "sbridge/errors.hpp"
#include "sbridge/realroots.hpp"

using namespace sbridge;
using namespace sbridge::realroots;

namespace {

const double kPi = std::numbers::pi;

RealPoly poly(std::initializer_list<int> c) {
  std::vector<Rational> q;
  for (int x : c) q.emplace_back(x);
  return RealPoly(q);
}

Rational q(int num, int den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(RealPoly, ArithmeticAndDivision) {
  const auto p = poly({-1, 0, 1});  // x^2 - 1
  const auto [quo, rem] = divmod(p, poly({-1, 1}));
  EXPECT_EQ(quo, poly({1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(gcd(p, poly({1, 1})), poly({1, 1}));
  // (x-1)^2 (x+2) -> (x-1)(x+2)
  const auto sq = squarefree_part(pow(poly({-1, 1}), 2) * poly({2, 1}));
  EXPECT_EQ(sq, poly({-2, 1, 1}));
  EXPECT_EQ(p(q(3)), q(8));
  EXPECT_THROW(divmod(p, RealPoly{}), ZeroPolynomial);
}

TEST(Sturm, SmallExamples) {
  EXPECT_EQ(sturm_count(poly({-2, 0, 1}), 0, 2), 1u);
  EXPECT_EQ(sturm_count(poly({1, 0, 1}), -10, 10), 0u);
  EXPECT_EQ(count_real_roots(poly({0, -1, 0, 1})), 3u);
  EXPECT_EQ(count_real_roots(pow(poly({1, 0, 1}), 3)), 0u);
  EXPECT_THROW(sturm_count(RealPoly{}, 0, 1), ZeroPolynomial);
  EXPECT_THROW(count_real_roots(RealPoly{}), ZeroPolynomial);
}

TEST(Sturm, EndpointsNeverCount) {
  const auto p = poly({0, -1, 0, 1});  // roots -1, 0, 1
  EXPECT_EQ(sturm_count(p, -1, 1), 1u);
  EXPECT_EQ(sturm_count(p, 0, 1), 0u);
  EXPECT_EQ(sturm_count(p, q(-1, 2), 2), 2u);
  // repeated roots count once
  EXPECT_EQ(sturm_count(pow(poly({-1, 1}), 3) * poly({1, 1}), -2, 2), 2u);
}

TEST(Sturm, AgreesWithSignSampling) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-100, 100);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> c;
    const int deg = 1 + trial % 6;
    for (int k = 0; k <= deg; ++k) c.push_back(q(num(rng), 10));
    RealPoly p(c);
    if (p.degree() < 1) continue;
    if (squarefree_part(p).degree() != p.degree()) continue;
    // roots well inside the sampled window and well separated only
    const auto roots = isolate_roots(p, -12, 12);
    bool crowded = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      crowded |= (roots[i + 1].lo - roots[i].hi) < q(1, 1000);
    }
    if (crowded) continue;
    const std::size_t dense = oracle::sign_changes_on_grid(
        [&](double x) { return p.eval(x); }, -10, 10, 100000);
    EXPECT_EQ(sturm_count(p, -10, 10), dense) << "trial " << trial;
    ++compared;
  }
  EXPECT_GT(compared, 150);
}

TEST(Sturm, IsolationSeparatesRoots) {
  // roots -1, -1/3, 1/2, 2 and a double root at 0
  const auto p = poly({1, 1}) * poly({1, 3}) * poly({-1, 2}) * poly({-2, 1}) *
                 poly({0, 0, 1});
  const auto iv = isolate_roots(p, -3, 3);
  ASSERT_EQ(iv.size(), 5u);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (iv[i].lo == iv[i].hi) {
      EXPECT_EQ(sgn(p(iv[i].lo)), 0);
    } else {
      EXPECT_EQ(sturm_count(p, iv[i].lo, iv[i].hi), 1u);
    }
    if (i) EXPECT_LE(iv[i - 1].hi, iv[i].lo);
  }
  const auto moved = separate(p, iv[3], q(1, 4));
  EXPECT_FALSE(moved.lo < q(1, 4) && q(1, 4) < moved.hi);
}

TEST(Trig, ProductAndDerivativeMatchSampling) {
  TrigPoly a = cos_harmonic(0, q(1, 3)) + cos_harmonic(2, q(1, 2)) +
               sin_harmonic(1, q(-1, 4));
  TrigPoly b = sin_harmonic(3, 2) + cos_harmonic(1, q(5, 7));
  const auto ab = a * b;
  const auto da = a.derivative();
  for (double t = -3; t < 3; t += 0.37) {
    EXPECT_NEAR(ab.eval(t), a.eval(t) * b.eval(t), 1e-12);
    const double h = 1e-6;
    EXPECT_NEAR(da.eval(t), (a.eval(t + h) - a.eval(t - h)) / (2 * h), 1e-7);
  }
  EXPECT_EQ(ab.harmonic(), 5);
}

TEST(Lemma, SignCases) {
  EXPECT_EQ(g1_zero_count({0.0, -0.5}), 1u);  // x = -b
  EXPECT_EQ(g1_zero_count({1.0, 1.0}), 0u);
  EXPECT_EQ(g1_zero_count({-0.5, 0.0}), 1u);  // x = sqrt(1 - a^2)
  EXPECT_EQ(g1_zero_count({0.5, 0.0}), 0u);
  EXPECT_EQ(g1_zero_count({0.0, 0.5}), 0u);
  EXPECT_EQ(lemma_case(q(0), q(1)), 1);
  EXPECT_EQ(lemma_case(q(1), q(0)), 2);
  EXPECT_EQ(lemma_case(q(1), q(1)), 3);
  EXPECT_EQ(lemma_case(q(-1), q(-1)), 4);
  EXPECT_EQ(lemma_case(q(-1), q(1)), 5);
  EXPECT_EQ(lemma_case(q(1), q(-1)), 6);
}

TEST(Lemma, DenseSamplingAtCaseFive) {
  const double a = -0.3, b = 0.4;
  const std::size_t dense = oracle::sign_changes_on_grid(
      [&](double x) { return oracle::g1(a, b, x); }, 0, 1, 1000000);
  const auto exact_count = g1_zero_count({a, b});
  EXPECT_EQ(exact_count, dense);
  EXPECT_LE(exact_count, 1u);
}

TEST(Lemma, AgreesWithSamplingOnRandomCoefficients) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const double a = u(rng), b = u(rng);
    // skip near-tangencies, which a grid cannot see
    const auto f = lemma_quartic(exact(a), exact(b));
    const auto roots = isolate_roots(f, 0, 1);
    bool crowded = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      crowded |= (roots[i + 1].lo - roots[i].hi) < q(1, 10000);
    }
    if (crowded) continue;
    const std::size_t dense = oracle::sign_changes_on_grid(
        [&](double x) { return oracle::g1(a, b, x); }, 0, 1, 200000);
    EXPECT_EQ(g1_zero_count({a, b}), dense) << a << " " << b;
    ++compared;
  }
  EXPECT_GT(compared, 350);
}

TEST(Lemma, StrataBounds) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 3000; ++trial) {
    const double a = u(rng), b = u(rng);
    const auto n = g1_zero_count({a, b});
    EXPECT_LE(n, 2u);
    if (a > 0 && b > 0) EXPECT_EQ(n, 0u);
    if (a < 0 && b > 0) EXPECT_LE(n, 1u);
    if (a > 0 && b < 0) EXPECT_LE(n, 1u);
  }
  for (double c : {-3.0, -0.7, 0.2, 0.9, 4.0}) {
    EXPECT_LE(g1_zero_count({0.0, c}), 1u);
    EXPECT_LE(g1_zero_count({c, 0.0}), 1u);
  }
}

TEST(Lemma, SecondFactorAtTheEnds) {
  // g2(x) = -a x + (b + x) sqrt(1 - x^2); the root term vanishes at +-1
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      auto g2 = [&](const Rational& x) -> Rational {
        return -q(a) * x + (q(b) + x) * 0;
      };
      EXPECT_EQ(g2(q(-1)), q(a));
      EXPECT_EQ(g2(q(1)), q(-a));
      // and f = g1 g2 really is the quartic: f(x) = (b+x)^2 (1-x^2) - a^2 x^2
      const auto f = lemma_quartic(q(a), q(b));
      for (int k = -4; k <= 4; ++k) {
        const Rational x = q(k, 5);
        const Rational direct =
            (q(b) + x) * (q(b) + x) * (1 - x * x) - q(a * a) * x * x;
        EXPECT_EQ(f(x), direct);
      }
    }
  }
}

TEST(Lemma, AtMostThreeZerosOnWholeDomain) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = exact(u(rng)), b = exact(u(rng));
    const auto f = lemma_quartic(a, b);
    std::size_t zeros = 0;
    for (auto root : isolate_roots(f, -1, 1)) {
      root = separate(f, root, Rational(0));
      root = separate(f, root, -b);
      const Rational r =
          root.lo == root.hi ? root.lo : (root.lo + root.hi) / 2;
      if (sgn(a * r) == -sgn(b + r)) ++zeros;
    }
    EXPECT_LE(zeros, 3u);
  }
}

TEST(Eta, DirectExamples) {
  EXPECT_EQ(eta_critical_count(Direction(1, 0, 0)), 0u);
  EXPECT_EQ(eta_critical_count(Direction(1, 1, 0)), 1u);
  EXPECT_EQ(eta_critical_count(Direction(0, 0, 1), 0, kPi), 1u);
  EXPECT_EQ(eta_critical_count(Direction(0, 0, 1), 0, 2 * kPi), 3u);
  EXPECT_EQ(eta_critical_count(Direction(0, 0, 1), -0.5, 2 * kPi - 0.5), 4u);
  EXPECT_THROW(Direction(0, 0, 0), ZeroDirection);
}

TEST(Eta, ReductionMatchesHalfAngleCount) {
  std::mt19937 rng(12);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const Direction v(g(rng), g(rng), g(rng));
    EXPECT_EQ(eta_critical_count(v), eta_critical_count(v, 0, kPi / 2));
    // whole circle versus a sampled derivative
    const std::size_t dense = oracle::sign_changes_on_grid(
        [&](double t) {
          return -v[0] * std::sin(t) + v[1] * std::cos(t) -
                 2 * v[2] * std::sin(t) * std::cos(t);
        },
        0.1234, 0.1234 + 2 * kPi, 200000);
    EXPECT_EQ(eta_critical_count(v, 0.1234, 0.1234 + 2 * kPi), dense);
  }
}

TEST(Weierstrass, CriticalPointsOfCosSquared) {
  const auto wp =
      weierstrass_polynomial(TrigPoly{}, TrigPoly{}, 1, 0, Direction(0, 0, 1));
  EXPECT_EQ(wp.N, 2);
  // t = 0, pi/2, pi give w = 1, 0, -1; t = 3pi/2 sits at infinity
  for (int w : {1, 0, -1}) EXPECT_EQ(sgn(wp.poly(q(w))), 0) << w;
  EXPECT_EQ(count_real_roots(wp.poly), 3u);
  EXPECT_EQ(kuiper_critical_count(wp), 4u);
}

TEST(Weierstrass, FlatLimitStructure) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> c(-20, 20);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + trial % 3;
    TrigPoly l1 = cos_harmonic(1 + trial % 4, q(c(rng), 100)) +
                  sin_harmonic(2, q(c(rng), 100));
    TrigPoly l2 = cos_harmonic(0, q(c(rng), 100)) +
                  sin_harmonic(1 + trial % 5, q(c(rng), 100));
    const Direction v(g(rng), g(rng), g(rng));
    const auto wp = weierstrass_polynomial(l1, l2, r, 0, v);
    const int extra = wp.N - 2 * r;
    const auto circle = pow(poly({1, 0, 1}), extra);
    const auto [quo, rem] = divmod(wp.poly, circle);
    EXPECT_TRUE(rem.is_zero()) << trial;
    EXPECT_LE(count_real_roots(wp.poly), std::size_t(4 * r));
    // the cofactor is the eps-free critical polynomial of degree <= 4r
    EXPECT_LE(quo.degree(), 4 * r);
  }
}

TEST(Weierstrass, PerturbedCountMatchesSampling) {
  const TrigPoly l1 = cos_harmonic(1, q(1, 2));
  const TrigPoly l2{};
  const Rational eps = q(1, 100);
  const Direction v(0, 0, 1);
  const auto wp = weierstrass_polynomial(l1, l2, 1, eps, v);
  // d/dt of cos^2 t + eps * 0 is -sin 2t; l2 = 0 so only z matters
  const std::size_t dense = oracle::sign_changes_on_grid(
      [](double t) { return -std::sin(2 * t); }, -kPi / 2 + 1e-3,
      3 * kPi / 2 + 1e-3, 1000000);
  EXPECT_EQ(kuiper_critical_count(wp), dense);
  EXPECT_LE(kuiper_critical_count(wp), 4u);

  // a tilted direction, derivative written out by hand
  const Direction u(0.3, -0.5, 0.8);
  const auto wu = weierstrass_polynomial(l1, l2, 1, eps, u);
  const double e = 0.01;
  auto deriv = [&](double t) {
    const double l = 0.5 * std::cos(t), dl = -0.5 * std::sin(t);
    const double dx = -std::sin(t) * (1 + e * l) + std::cos(t) * e * dl;
    const double dy = std::cos(t) * (1 + e * l) + std::sin(t) * e * dl;
    const double dz = -std::sin(2 * t);
    return u[0] * dx + u[1] * dy + u[2] * dz;
  };
  const std::size_t dense_u = oracle::sign_changes_on_grid(
      deriv, -kPi / 2 + 1e-3, 3 * kPi / 2 + 1e-3, 1000000);
  EXPECT_EQ(kuiper_critical_count(wu), dense_u);
  EXPECT_LE(kuiper_critical_count(wu), 4u);
}

TEST(Weierstrass, RejectsLargePerturbation) {
  EXPECT_THROW(weierstrass_polynomial(cos_harmonic(1, 2), sin_harmonic(1, 1),
                                      1, q(1, 10), Direction(0, 0, 1)),
               NormViolation);
}
