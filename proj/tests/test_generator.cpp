#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "divkit/generator.hpp"

namespace {

using namespace divkit;

std::vector<ConvexGenerator> all_builtins() {
  std::vector<ConvexGenerator> out;
  for (Builtin b : kAllBuiltins) {
    if (b == Builtin::sason_s) {
      for (double s : {0.3, 1.0, 2.0}) out.push_back(make_builtin(b, s));
    } else if (b == Builtin::alpha_divergence) {
      for (double a : {-3.0, 0.0, 0.5, 2.5, 3.5}) out.push_back(make_builtin(b, a));
    } else {
      out.push_back(make_builtin(b));
    }
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

TEST(Builtins, PearsonRow) {
  const auto g = make_builtin(Builtin::pearson_chi2);
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) EXPECT_DOUBLE_EQ(g.eval(t), (t - 1) * (t - 1));
  EXPECT_EQ(g.f_at_zero(), 1.0);
  EXPECT_TRUE(std::isinf(g.f_star_at_zero()));
}

TEST(Builtins, VinczeLeCamAtThree) { EXPECT_DOUBLE_EQ(make_builtin(Builtin::vincze_le_cam).eval(3.0), 1.0); }

TEST(Builtins, EveryGeneratorVanishesAtOne) {
  for (const auto& g : all_builtins()) EXPECT_EQ(g.eval(1.0), 0.0) << g.name();
}

TEST(Builtins, NamesAndParameters) {
  EXPECT_EQ(make_builtin("kl").builtin(), Builtin::kl);
  EXPECT_EQ(make_builtin("alpha:0.5").param("alpha"), 0.5);
  EXPECT_EQ(make_builtin("sason:1.0").param("s"), 1.0);
  EXPECT_THROW(make_builtin("nope"), InvalidArgument);
  EXPECT_THROW(make_builtin("kl:2"), InvalidArgument);
  EXPECT_THROW(make_builtin("alpha:x"), InvalidArgument);
  EXPECT_THROW(make_builtin(Builtin::alpha_divergence, 1.0), InvalidArgument);
  EXPECT_THROW(make_builtin(Builtin::alpha_divergence, -1.0), InvalidArgument);
  EXPECT_THROW(make_builtin(Builtin::sason_s, 0.2), InvalidArgument);
  EXPECT_NO_THROW(make_builtin(Builtin::sason_s, 0.3));
}

TEST(Builtins, ThreePointConvexity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (const auto& g : all_builtins()) {
    for (int i = 0; i < 1000; ++i) {
      double x = std::exp(u(rng)), y = std::exp(u(rng));
      if (!g.domain().contains(x) || !g.domain().contains(y)) continue;
      for (double t : {0.25, 0.5, 0.75}) {
        const double lhs = g.eval((1 - t) * x + t * y);
        const double rhs = (1 - t) * g.eval(x) + t * g.eval(y);
        ASSERT_LE(lhs, rhs + 1e-12 * std::max(1.0, std::abs(rhs))) << g.name() << " x=" << x << " y=" << y;
      }
    }
  }
}

// Limits compared against a decade sequence; power-type generators converge
// slowly, so the error only has to shrink between 1e-6 and 1e-12.
TEST(Builtins, BoundaryLimitsMatchNumericLimits) {
  for (const auto& g : all_builtins()) {
    const double f0 = g.f_at_zero();
    const double fs0 = g.f_star_at_zero();
    if (std::isfinite(f0)) {
      EXPECT_LE(std::abs(g.eval(1e-12) - f0), std::abs(g.eval(1e-6) - f0) + 1e-15) << g.name();
      EXPECT_NEAR(g.eval(1e-12), f0, 1e-2 * std::max(1.0, std::abs(f0))) << g.name();
    } else {
      EXPECT_GT(g.eval(1e-12), g.eval(1e-6)) << g.name();
    }
    if (std::isfinite(fs0)) {
      EXPECT_LE(std::abs(g.eval(1e12) / 1e12 - fs0), std::abs(g.eval(1e6) / 1e6 - fs0) + 1e-15) << g.name();
      EXPECT_NEAR(g.eval(1e12) / 1e12, fs0, 1e-2 * std::max(1.0, std::abs(fs0))) << g.name();
    } else {
      EXPECT_GT(g.eval(1e12) / 1e12, g.eval(1e6) / 1e6) << g.name();
    }
  }
}

TEST(Kappa, TableExamples) {
  EXPECT_DOUBLE_EQ(kappa_on(make_builtin(Builtin::kl), Interval::open_closed(0, 4)).kappa, 0.25);
  EXPECT_DOUBLE_EQ(kappa_on(make_builtin(Builtin::pearson_chi2), Interval::positive_reals()).kappa, 2.0);
  EXPECT_DOUBLE_EQ(kappa_on(make_builtin(Builtin::jensen_shannon), Interval::open_closed(0, 2)).kappa, 1.0 / 6.0);
  EXPECT_EQ(kappa_on(make_builtin(Builtin::kl), Interval::positive_reals()).kappa, 0.0);
}

TEST(Kappa, ClosedFormMatchesTableRows) {
  for (const auto& g : all_builtins()) {
    for (double m : {0.25, 0.5, 1.0, 2.0, 8.0}) {
      const auto row = table_row(g, m);
      const auto cert = kappa_on(g, row.interval);
      EXPECT_EQ(cert.method, CertificateMethod::closed_form);
      EXPECT_NEAR(cert.kappa, row.kappa, 1e-12 * std::max(1.0, row.kappa)) << g.name() << " M=" << m;
    }
  }
}

TEST(Kappa, TableRowsPassFiniteDifferenceAudit) {
  for (const auto& g : all_builtins()) {
    for (double m : {0.25, 0.5, 1.0, 2.0, 8.0}) {
      const auto row = table_row(g, m);
      const auto audit = verify_certificate(g, {row.interval, row.kappa, CertificateMethod::closed_form});
      EXPECT_TRUE(audit.passed) << g.name() << " M=" << m << " worst " << audit.worst_margin << " at "
                                << audit.worst_t;
      EXPECT_GT(audit.points, 100u);
    }
  }
}

TEST(Kappa, AuditRejectsOverstatedKappa) {
  const auto g = make_builtin(Builtin::kl);
  const auto audit = verify_certificate(g, {Interval::open_closed(0, 2), 0.6, CertificateMethod::closed_form});
  EXPECT_FALSE(audit.passed);
  EXPECT_NEAR(audit.worst_t, 2.0, 1e-9);
}

TEST(Kappa, AlphaRowSwitchesSideAtThree) {
  EXPECT_TRUE(table_row(make_builtin(Builtin::alpha_divergence, 2.5), 2).interval.contains(0.5));
  EXPECT_TRUE(table_row(make_builtin(Builtin::alpha_divergence, 3.5), 2).interval.contains(50.0));
  EXPECT_FALSE(table_row(make_builtin(Builtin::alpha_divergence, 3.5), 2).interval.contains(0.5));
}

TEST(Kappa, FiniteDifferenceFallback) {
  const auto g = ConvexGenerator("cosh", [](double t) { return std::cosh(t - 1) - 1; }, std::cosh(1.0) - 1, kInf);
  const auto cert = kappa_on(g, Interval::closed(0.5, 3.0));
  EXPECT_EQ(cert.method, CertificateMethod::finite_difference);
  EXPECT_NEAR(cert.kappa, 1.0, 1e-4);
  EXPECT_LE(cert.kappa, 1.0);
  EXPECT_TRUE(verify_certificate(g, cert).passed);
}

TEST(Kappa, RejectsBadIntervals) {
  EXPECT_THROW(kappa_on(make_builtin(Builtin::kl), Interval::open(2.0, 1.0)), DomainError);
}

TEST(Kappa, JensenGap) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& g : all_builtins()) {
    for (double m : {0.5, 2.0, 8.0}) {
      const auto row = table_row(g, m);
      const double lo = std::max(row.interval.lo, 1e-3);
      const double hi = std::isfinite(row.interval.hi) ? row.interval.hi : lo * 50;
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(4), w(4);
        double ws = 0;
        for (int i = 0; i < 4; ++i) {
          x[i] = lo + (hi - lo) * u(rng);
          w[i] = 0.05 + u(rng);
          ws += w[i];
        }
        double ex = 0, efx = 0, ex2 = 0;
        for (int i = 0; i < 4; ++i) {
          w[i] /= ws;
          ex += w[i] * x[i];
          efx += w[i] * g.eval(x[i]);
          ex2 += w[i] * x[i] * x[i];
        }
        const double var = ex2 - ex * ex;
        ASSERT_GE(efx - g.eval(ex), row.kappa / 2 * var - 1e-10 * std::max(1.0, std::abs(efx)))
            << g.name() << " M=" << m;
      }
    }
  }
}

TEST(Dual, PearsonDualIsNeymanUpToShift) {
  const auto d = dual(make_builtin(Builtin::pearson_chi2));
  const auto neyman = make_builtin(Builtin::neyman_chi2);
  for (double t : log_grid(1e-3, 1e3, 61)) {
    EXPECT_NEAR(d.eval(t), (1 - t) * (1 - t) / t, 1e-9 * std::max(1.0, d.eval(t)));
    EXPECT_NEAR(d.eval(t) - neyman.eval(t), t - 1, 1e-9 * std::max(1.0, 1 / t));
  }
  EXPECT_EQ(d.f_at_zero(), make_builtin(Builtin::pearson_chi2).f_star_at_zero());
  EXPECT_EQ(d.f_star_at_zero(), make_builtin(Builtin::pearson_chi2).f_at_zero());
}

TEST(Dual, Involution) {
  for (const auto& g : all_builtins()) {
    const auto dd = dual(dual(g));
    EXPECT_EQ(dd.f_at_zero(), g.f_at_zero());
    EXPECT_EQ(dd.f_star_at_zero(), g.f_star_at_zero());
    for (double t : log_grid(1e-3, 1e3, 41)) {
      if (!g.domain().contains(t)) continue;
      EXPECT_NEAR(dd.eval(t), g.eval(t), 1e-12 * std::max(1.0, std::abs(g.eval(t)))) << g.name() << " t=" << t;
    }
  }
}

TEST(Dual, TotalVariationIsSelfDual) {
  const auto tv = make_builtin(Builtin::total_variation);
  const auto d = dual(tv);
  for (double t : log_grid(1e-3, 1e3, 41)) EXPECT_NEAR(d.eval(t), tv.eval(t), 1e-12 * std::max(1.0, t));
}

TEST(Dual, KappaTransfer) {
  for (const auto& g : all_builtins()) {
    for (double a : {0.25, 0.5, 1.0}) {
      const double b = 4 * a;
      if (!g.domain().contains(Interval::closed(a, b))) continue;
      const double kappa = kappa_on(g, Interval::closed(a, b)).kappa;
      const double dual_kappa = kappa_on(dual(g), Interval::closed(1 / b, 1 / a)).kappa;
      EXPECT_GE(dual_kappa, kappa * a * a * a * (1 - 1e-4) - 1e-9) << g.name() << " a=" << a;
    }
  }
}

TEST(Affine, ZeroShiftIsIdentity) {
  for (const auto& g : all_builtins()) {
    const auto s = affine_shift(g, 0.0);
    for (double t : log_grid(1e-2, 1e2, 21))
      if (g.domain().contains(t)) EXPECT_EQ(s.eval(t), g.eval(t));
  }
}

TEST(Affine, NormalizedKlIsNonnegative) {
  const auto g = affine_shift(make_builtin(Builtin::kl), -1.0);
  for (double t : log_grid(1e-6, 1e6, 201)) {
    EXPECT_NEAR(g.eval(t), t * std::log(t) - (t - 1), 1e-9 * std::max(1.0, t * std::abs(std::log(t))));
    EXPECT_GE(g.eval(t), 0.0);
  }
  EXPECT_EQ(g.f_at_zero(), 1.0);
  EXPECT_TRUE(std::isinf(g.f_star_at_zero()));
}

TEST(Affine, NormalizedHasZeroSlopeAtOne) {
  for (const auto& g : all_builtins()) {
    if (!g.domain().contains(1.0)) continue;
    EXPECT_NEAR(derivative_at_one(normalized(g)), 0.0, 1e-6 * std::max(1.0, std::abs(derivative_at_one(g))))
        << g.name();
  }
}

TEST(Interval, Formatting) {
  EXPECT_EQ(Interval::open_closed(0, 2).to_string(), "(0, 2]");
  EXPECT_EQ(Interval::closed_open(2, kInf).to_string(), "[2, inf)");
  EXPECT_EQ(Interval::positive_reals().to_string(), "(0, inf)");
  EXPECT_TRUE(Interval::closed(1, 1).degenerate());
  EXPECT_TRUE(Interval::open(1, 1).empty());
}

}  // namespace
