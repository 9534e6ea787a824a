#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "divkit/bayes.hpp"
#include "divkit/divergence.hpp"
#include "divkit/skewing.hpp"

namespace {

using namespace divkit;

using Masses = std::vector<double>;

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  Masses dist(std::size_t n, bool zeros = false) {
    Masses m(n);
    double s = 0;
    for (auto& x : m) {
      x = zeros && u_(rng_) < 0.15 ? 0.0 : u_(rng_) + 1e-3;
      s += x;
    }
    if (s == 0) m[0] = s = 1;
    for (auto& x : m) x /= s;
    return m;
  }
  BayesProblem problem(std::size_t n, std::size_t atoms, bool zeros = false) {
    std::vector<Masses> hs;
    for (std::size_t i = 0; i < n; ++i) hs.push_back(dist(atoms, zeros));
    return BayesProblem::from_masses(hs, dist(n));
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> u_{0.0, 1.0};
};

// Minimum misclassification probability over every estimator.
double enumerate_risk(const BayesProblem& prob) {
  const std::size_t n = prob.size(), m = prob.support_size();
  std::size_t total = 1;
  for (std::size_t x = 0; x < m; ++x) total *= n;
  double best = 1.0;
  for (std::size_t code = 0; code < total; ++code) {
    double correct = 0;
    std::size_t c = code;
    for (std::size_t x = 0; x < m; ++x, c /= n) correct += prob.prior()[c % n] * prob.hypothesis(c % n)[x];
    best = std::min(best, 1 - correct);
  }
  return best;
}

TEST(BayesProblem, Validation) {
  EXPECT_THROW(BayesProblem::from_masses({{0.5, 0.5}}, {0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(BayesProblem::from_masses({{0.5, 0.5}, {1, 0}}, {0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(BayesProblem::from_masses({{0.5, 0.5}, {1, 0}}, {0.6, 0.6}), InvalidArgument);
  EXPECT_THROW(BayesProblem({}, {}), InvalidArgument);
  const BayesProblem aligned({DiscreteDistribution({"a"}, {1.0}), DiscreteDistribution({"b"}, {1.0})}, {0.5, 0.5});
  EXPECT_EQ(aligned.support_size(), 2u);
  EXPECT_EQ(aligned.hypothesis(1), (Masses{0.0, 1.0}));
}

TEST(Estimator, TwoPointExample) {
  const auto prob = BayesProblem::from_masses({{0.5, 0.5}, {0.25, 0.75}}, {0.5, 0.5});
  const auto est = bayes_estimator(prob);
  EXPECT_EQ(est.estimator, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(est.risk, 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(2 * est.risk, 1 - total_variation(prob.hypothesis(0), prob.hypothesis(1)));
}

TEST(Estimator, IdenticalHypotheses) {
  const auto prob = BayesProblem::from_masses({{0.2, 0.8}, {0.2, 0.8}, {0.2, 0.8}}, {0.3, 0.5, 0.2});
  const auto est = bayes_estimator(prob);
  EXPECT_NEAR(est.risk, 0.5, 1e-15);
  for (auto t : est.estimator) EXPECT_EQ(t, 1u);
}

TEST(Estimator, TiesGoToSmallestIndex) {
  const auto prob = BayesProblem::from_masses({{0.5, 0.5}, {0.5, 0.5}}, {0.5, 0.5});
  EXPECT_EQ(bayes_estimator(prob).estimator, (std::vector<std::size_t>{0, 0}));
}

TEST(Estimator, MatchesExhaustiveEnumeration) {
  Draw d(1);
  for (int i = 0; i < 300; ++i) {
    const auto prob = d.problem(2 + i % 3, 2 + i % 7, true);
    const double r = bayes_estimator(prob).risk;
    EXPECT_NEAR(r, enumerate_risk(prob), 1e-12);
    double max_prior = 0;
    for (double l : prob.prior()) max_prior = std::max(max_prior, l);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1 - max_prior + 1e-15);
  }
}

TEST(Estimator, ZeroRiskOnDisjointSupports) {
  const auto prob = BayesProblem::from_masses({{1, 0, 0}, {0, 0.5, 0.5}}, {0.3, 0.7});
  EXPECT_EQ(bayes_estimator(prob).risk, 0.0);
}

TEST(Estimator, TwoPointRiskIdentity) {
  Draw d(2);
  for (int i = 0; i < 500; ++i) {
    const auto p = d.dist(2 + i % 9, true), q = d.dist(2 + i % 9, true);
    const auto prob = BayesProblem::from_masses({p, q}, {0.5, 0.5});
    EXPECT_NEAR(2 * bayes_estimator(prob).risk, 1 - total_variation(p, q), 1e-12);
  }
}

TEST(Decompose, WorkedExample) {
  const auto prob = BayesProblem::from_masses({{0.5, 0.5}, {0.25, 0.75}}, {0.5, 0.5});
  const auto d = decompose(prob, prob.barycenter());
  ASSERT_TRUE(d.rho1);
  EXPECT_NEAR((*d.rho1)[0], 0.4, 1e-15);
  EXPECT_NEAR((*d.rho1)[1], 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(d.q_mass, 0.5);
  EXPECT_FALSE(d.degenerate());
}

TEST(Decompose, UniformPriorGivesHalfQMass) {
  Draw d(3);
  for (int i = 0; i < 50; ++i) {
    const auto prob = BayesProblem::from_masses({d.dist(5), d.dist(5)}, {0.5, 0.5});
    EXPECT_DOUBLE_EQ(decompose(prob, d.dist(5)).q_mass, 0.5);
  }
}

TEST(Decompose, Reconstruction) {
  Draw d(4);
  for (int i = 0; i < 1000; ++i) {
    const auto prob = d.problem(2 + i % 3, 2 + i % 8, true);
    const auto q = d.dist(prob.support_size(), true);
    const auto dec = decompose(prob, q);
    for (std::size_t x = 0; x < q.size(); ++x) {
      const double qx = (dec.q1 ? (1 - dec.q_mass) * (*dec.q1)[x] : 0) + (dec.q2 ? dec.q_mass * (*dec.q2)[x] : 0);
      const double px = (dec.rho1 ? (1 - dec.risk) * (*dec.rho1)[x] : 0) + (dec.rho2 ? dec.risk * (*dec.rho2)[x] : 0);
      ASSERT_NEAR(qx, q[x], 1e-12);
      ASSERT_NEAR(px, dec.barycenter[x], 1e-12);
    }
  }
}

TEST(Decompose, DegenerateComponentsAreAbsent) {
  const auto prob = BayesProblem::from_masses({{1, 0}, {0, 1}}, {0.5, 0.5});
  const auto d = decompose(prob, prob.barycenter());
  EXPECT_EQ(d.risk, 0.0);
  EXPECT_FALSE(d.rho2);
  EXPECT_TRUE(d.degenerate());
  const auto w = w_terms(prob, prob.barycenter());
  EXPECT_TRUE(w.degenerate);
  EXPECT_TRUE(std::isfinite(w.w_total));
}

TEST(WTerms, TwoHypothesesHaveNoW0) {
  Draw d(5);
  for (int i = 0; i < 100; ++i) {
    const auto prob = d.problem(2, 6, true);
    const auto w = w_terms(prob, d.dist(6));
    EXPECT_EQ(w.w0, 0.0);
    EXPECT_DOUBLE_EQ(w.w_total, w.w0 + w.w1 + w.w2);
  }
}

TEST(WTerms, IdenticalHypothesesAtBarycenter) {
  const auto prob = BayesProblem::from_masses({{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}}, {0.2, 0.3, 0.5});
  const auto w = w_terms(prob, prob.barycenter());
  EXPECT_NEAR(w.w_total, 0.0, 1e-15);
}

TEST(WTerms, W0MatchesConditionalVariance) {
  Draw d(6);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + i % 2;
    const auto prob = d.problem(n, 5);
    const auto q = d.dist(5);
    const auto est = bayes_estimator(prob);
    double brute = 0;
    for (std::size_t x = 0; x < 5; ++x) {
      const std::size_t t = est.estimator[x];
      const double rest = 1 - prob.prior()[t];
      double mean = 0, second = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == t) continue;
        const double ratio = prob.hypothesis(k)[x] / q[x];
        mean += prob.prior()[k] / rest * ratio;
        second += prob.prior()[k] / rest * ratio * ratio;
      }
      brute += rest * (second - mean * mean) * q[x];
    }
    EXPECT_NEAR(w_terms(prob, q).w0, brute, 1e-10 * std::max(1.0, brute));
  }
}

TEST(Guntuboyina, TotalVariationReducesToOriginalBound) {
  Draw d(7);
  const auto tv = make_builtin(Builtin::total_variation);
  for (int i = 0; i < 200; ++i) {
    const auto prob = d.problem(2 + i % 3, 2 + i % 6, true);
    const auto q = d.dist(prob.support_size(), true);
    const auto r = guntuboyina_bound(prob, q, tv);
    EXPECT_EQ(r.aux_value("kappa"), 0.0);
    EXPECT_EQ(r.rhs, r.aux_value("binary_term"));
    EXPECT_TRUE(r.passed()) << r.margin;
  }
}

TEST(Guntuboyina, RandomSweep) {
  Draw d(8);
  const ConvexGenerator gens[] = {make_builtin(Builtin::kl), make_builtin(Builtin::pearson_chi2),
                                  make_builtin(Builtin::squared_hellinger), make_builtin(Builtin::jensen_shannon)};
  for (int i = 0; i < 300; ++i) {
    const auto prob = d.problem(2 + i % 3, std::size_t{2} << (i % 4), true);
    const auto q = i % 2 ? prob.barycenter() : d.dist(prob.support_size(), true);
    for (const auto& g : gens) {
      const auto r = guntuboyina_bound(prob, q, g);
      EXPECT_TRUE(r.passed()) << g.name() << " margin " << r.margin;
    }
  }
}

TEST(Guntuboyina, InfiniteLhsPassesTrivially) {
  const auto prob = BayesProblem::from_masses({{0.5, 0.5}, {0.2, 0.8}}, {0.5, 0.5});
  const auto r = guntuboyina_bound(prob, Masses{1.0, 0.0}, make_builtin(Builtin::kl));
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(std::isinf(r.lhs));
}

// n = 2, uniform prior, kl at the barycenter: the bound reads
// JSD >= D(R||1/2) + (1/4) W with kappa = 1/2 on (0, 2).
TEST(Guntuboyina, UniformPriorKlAtBarycenter) {
  Draw d(9);
  const auto klg = make_builtin(Builtin::kl);
  for (int i = 0; i < 200; ++i) {
    const auto p1 = d.dist(5, true), p2 = d.dist(5, true);
    const auto prob = BayesProblem::from_masses({p1, p2}, {0.5, 0.5});
    const auto r = guntuboyina_bound(prob, prob.barycenter(), klg);
    EXPECT_NEAR(r.lhs, jsd(p1, p2), 1e-12);
    EXPECT_GE(*r.aux_value("kappa"), 0.5 - 1e-12);
    EXPECT_TRUE(r.passed());
    const double v = total_variation(p1, p2);
    EXPECT_NEAR(*r.aux_value("binary_term"), binary_divergence(klg, (1 + v) / 2, 0.5), 1e-12);
  }
}

TEST(Compensation, IdentityAndSpecializations) {
  Draw d(10);
  for (int i = 0; i < 300; ++i) {
    const auto prob = d.problem(3, 2 + i % 6);
    EXPECT_TRUE(compensation_identity_check(prob, d.dist(prob.support_size())).passed());
    EXPECT_TRUE(compensation_identity_check(prob, prob.barycenter()).passed());
  }
  const auto p1 = d.dist(4), p2 = d.dist(4), q = d.dist(4);
  Masses m(4);
  for (int x = 0; x < 4; ++x) m[x] = (p1[x] + p2[x]) / 2;
  EXPECT_NEAR(kl(p1, q) + kl(p2, q), 2 * kl(m, q) + 2 * jsd(p1, p2), 1e-12);
}

TEST(Compensation, InfiniteTermsAreSkipped) {
  const auto prob = BayesProblem::from_masses({{0.5, 0.5}, {0.2, 0.8}}, {0.5, 0.5});
  EXPECT_EQ(compensation_identity_check(prob, Masses{1.0, 0.0}).verdict, Verdict::skipped);
}

TEST(Series, WorkedExample) {
  const auto s = pinsker_series(Masses{0.5, 0.5}, Masses{0.25, 0.75}, 60);
  EXPECT_NEAR(s.partial_sums.back(), kl(Masses{0.5, 0.5}, Masses{0.25, 0.75}), 1e-9);
  EXPECT_NEAR(s.kl, 0.143841036, 1e-9);
  EXPECT_TRUE(s.converged);
}

TEST(Series, IdenticalArguments) {
  const auto s = pinsker_series(Masses{0.3, 0.7}, Masses{0.3, 0.7}, 60);
  for (double v : s.partial_sums) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(s.sharpened_bound(), 0.0);
  EXPECT_EQ(s.kl, 0.0);
}

TEST(Series, MonotoneBoundedAndConvergent) {
  Draw d(11);
  for (int i = 0; i < 300; ++i) {
    const auto p2 = d.dist(2 + i % 9);
    const auto p1 = d.dist(2 + i % 9, true);
    const auto s = pinsker_series(p1, p2, 60);
    for (std::size_t k = 1; k < s.partial_sums.size(); ++k) ASSERT_GE(s.partial_sums[k], s.partial_sums[k - 1]);
    EXPECT_LE(s.partial_sums.back(), s.kl + 1e-9);
    EXPECT_NEAR(s.partial_sums.back(), s.kl, 1e-9);
    for (double t : s.lower_bound_terms) EXPECT_GE(t, 0.0);
  }
}

TEST(Series, FirstTermUsesMidpointDecomposition) {
  Draw d(12);
  for (int i = 0; i < 100; ++i) {
    const auto p1 = d.dist(6), p2 = d.dist(6);
    const auto s = pinsker_series(p1, p2, 60);
    const double v = total_variation(p1, p2);
    Masses mid(6), hi(6), lo(6);
    for (int x = 0; x < 6; ++x) {
      mid[x] = (p1[x] + p2[x]) / 2;
      hi[x] = std::max(p1[x], p2[x]) / (1 + v);
      lo[x] = std::min(p1[x], p2[x]) / (1 - v);
    }
    ASSERT_FALSE(s.lower_bound_terms.empty());
    EXPECT_NEAR(s.lower_bound_terms[0], (chi_square(hi, mid) + chi_square(lo, mid)) / 2, 1e-12);
  }
}

TEST(Series, DivergentWhenNotAbsolutelyContinuous) {
  const auto s = pinsker_series(Masses{0.5, 0.5}, Masses{1.0, 0.0}, 60);
  EXPECT_TRUE(s.diverges);
  EXPECT_TRUE(std::isinf(s.kl));
}

TEST(Series, DerivedWeightedBoundHolds) {
  Draw d(13);
  for (int i = 0; i < 500; ++i) {
    const auto p1 = d.dist(2 + i % 7, true), p2 = d.dist(2 + i % 7);
    const auto s = pinsker_series(p1, p2, 60);
    double derived = s.pinsker();
    for (double t : s.weighted_lower_bound_terms) derived += t / 2;
    EXPECT_GE(s.kl, derived - 1e-10);
    EXPECT_GE(s.kl, s.pinsker() - 1e-12);
  }
}

TEST(JsdBound, WeakenedFormOnGrid) {
  const auto klg = make_builtin(Builtin::kl);
  for (int k = 0; k < 1000; ++k) {
    const double v = k / 1000.0;
    EXPECT_GE(2 * binary_divergence(klg, (1 + v) / 2, 0.5), v * v - 1e-15) << v;
    EXPECT_NEAR(binary_divergence(klg, (1 + v) / 2, 0.5), binary_divergence(klg, (1 - v) / 2, 0.5), 1e-15);
  }
}

}  // namespace
