#pragma once

// Checks on single generators and on plain f-divergences.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "divkit/distribution.hpp"
#include "divkit/divergence.hpp"
#include "divkit/generator.hpp"
#include "divkit/harness/context.hpp"

namespace divkit::harness {

// Closed-form kappa(M) of every table row against the finite-difference audit.
inline void check_kappa_table(CheckContext& ctx) {
  const double ms[] = {0.25, 0.5, 1.0, 2.0, 8.0};
  std::vector<ConvexGenerator> rows;
  for (Builtin b : kAllBuiltins) {
    if (b == Builtin::sason_s) {
      for (double s : {0.3, 1.0, 2.0}) rows.push_back(make_builtin(b, s));
    } else if (b == Builtin::alpha_divergence) {
      for (double a : {-3.0, 0.0, 2.5, 3.5}) rows.push_back(make_builtin(b, a));
    } else {
      rows.push_back(make_builtin(b));
    }
  }
  for (const auto& g : rows) {
    for (double m : ms) {
      const auto row = table_row(g, m);
      const KappaCertificate cert{row.interval, row.kappa, CertificateMethod::closed_form};
      const auto audit = verify_certificate(g, cert);
      const double slack = 1e-6 * std::max(1.0, row.kappa);
      const std::string inst = g.name() + " M=" + format_param(m) + " on " + row.interval.to_string();
      auto r = CheckReport::at_least(ctx.id(), inst, audit.worst_margin + row.kappa - slack, row.kappa, slack);
      r.note("kappa", row.kappa).note("worst_t", audit.worst_t).note("grid_points", static_cast<double>(audit.points));
      ctx.emit(std::move(r));
    }
  }
}

// E f(X) - f(E X) >= (kappa/2) Var X for X inside a certificate interval.
inline void check_kappa_jensen_gap(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  const double ms[] = {0.25, 0.5, 1.0, 2.0, 8.0};
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const auto& g = gen.pick(panel);
    const double m = ms[gen.index(5)];
    const auto row = table_row(g, m);
    const double lo = row.interval.lo > 0.0 ? row.interval.lo : m * 1e-3;
    const double hi = std::isfinite(row.interval.hi) ? row.interval.hi : m * 10.0;
    const std::size_t k = 2 + gen.index(5);
    const auto w = gen.weights(k);
    std::vector<double> x(k);
    for (double& v : x) v = gen.uniform(lo, hi);
    double mean = 0.0, ef = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      mean += w[j] * x[j];
      ef += w[j] * g.eval(x[j]);
    }
    double var = 0.0;
    for (std::size_t j = 0; j < k; ++j) var += w[j] * (x[j] - mean) * (x[j] - mean);
    auto r = ctx.at_least("#" + std::to_string(i) + " " + g.name() + " M=" + format_param(m),
                          ef - g.eval(mean), row.kappa / 2.0 * var);
    r.note("kappa", row.kappa);
    ctx.emit(std::move(r));
  }
}

// kappa-convexity of f on [a, b] transfers to kappa a^3 for the dual on [1/b, 1/a].
inline void check_dual_kappa_transfer(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const auto& g = gen.pick(panel);
    double a = std::exp(gen.uniform(std::log(0.05), std::log(20.0)));
    double b = std::exp(gen.uniform(std::log(0.05), std::log(20.0)));
    if (a > b) std::swap(a, b);
    if (a == b) b = a * 2.0;
    const double kappa = kappa_on(g, Interval::closed(a, b)).kappa;
    const auto dual_cert = kappa_on(dual(g), Interval::closed(1.0 / b, 1.0 / a));
    const double rhs = kappa * a * a * a;
    auto r = CheckReport::at_least(ctx.id(),
                                   "#" + std::to_string(i) + " " + g.name() + " [" + format_param(a) + "," +
                                       format_param(b) + "]",
                                   dual_cert.kappa, rhs, 1e-5 * std::max(1.0, rhs));
    r.note("kappa", kappa);
    ctx.emit(std::move(r));
  }
}

// D_f >= (kappa/2) chi^2 with kappa certified on the ratio range.
inline void check_chi2_lower_bound(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = strongly_convex_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double chi2 = chi_square(p, q);
    const auto range = ratio_range(p, q);
    for (const auto& g : panel) {
      const double kappa = kappa_on(g, range.interval()).kappa;
      const std::string inst = tag(i, n, g.name());
      if (kappa == 0.0 && std::isinf(chi2)) {
        ctx.emit(ctx.skip(inst, "kappa = 0 with infinite chi^2"));
        continue;
      }
      auto r = ctx.at_least(inst, f_divergence(g, p, q).value, kappa / 2.0 * chi2);
      r.note("kappa", kappa).note("chi2", chi2);
      ctx.emit(std::move(r));
    }
  }
}

struct Dominance {
  Builtin upper;
  Builtin lower;
  double c;
};

// c f >= g pointwise (after removing f'(1)(t-1)) implies D_g <= c D_f.
inline void check_functional_dominance(CheckContext& ctx) {
  static constexpr Dominance pairs[] = {
      {Builtin::kl, Builtin::squared_hellinger, 1.0},
      {Builtin::pearson_chi2, Builtin::kl, 1.0},
      {Builtin::pearson_chi2, Builtin::vincze_le_cam, 1.0},
      {Builtin::vincze_le_cam, Builtin::squared_hellinger, 1.0},
      {Builtin::squared_hellinger, Builtin::vincze_le_cam, 2.0},
  };
  std::vector<double> gaps;
  for (const auto& d : pairs) {
    const auto f = normalized(make_builtin(d.upper));
    const auto g = normalized(make_builtin(d.lower));
    double worst = d.c * f.f_at_zero() - g.f_at_zero();
    for (double t : certificate_grid(Interval::closed(1e-6, 1e6), 400)) {
      const double cf = d.c * f.eval(t);
      const double gt = g.eval(t);
      worst = std::min(worst, (cf - gt) / std::max(1.0, std::abs(cf)));
    }
    gaps.push_back(worst);
  }
  auto& gen = ctx.gen();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    for (std::size_t k = 0; k < std::size(pairs); ++k) {
      const auto& d = pairs[k];
      const auto f = make_builtin(d.upper);
      const auto g = make_builtin(d.lower);
      const double df = f_divergence(f, p, q).value;
      const double dg = f_divergence(g, p, q).value;
      auto r = ctx.at_most(tag(i, n, g.name() + "<=" + format_param(d.c) + "*" + f.name()), dg,
                           weighted_limit(d.c, df));
      r.note("pointwise_min_gap", gaps[k]);
      ctx.emit(std::move(r));
    }
  }
}

// D/chi^2 near P = Q approaches f''(1)/2.
inline void check_chi2_sharpness(CheckContext& ctx) {
  const double eps = 1e-3;
  const std::vector<double> q{0.5, 0.5};
  const std::vector<double> p{0.5 + eps, 0.5 - eps};
  for (const auto& g : builtin_panel()) {
    if (!g.has_second_derivative() || g.builtin() == Builtin::total_variation) continue;
    const double target = g.second_derivative(1.0) / 2.0;
    const double ratio = f_divergence(g, p, q).value / chi_square(p, q);
    auto r = CheckReport::at_most(ctx.id(), g.name() + " eps=" + format_param(eps),
                                  std::abs(ratio / target - 1.0), 0.05, 0.0);
    r.note("ratio", ratio).note("target", target);
    ctx.emit(std::move(r));
  }
}

namespace detail {

struct MixtureInstance {
  std::vector<std::vector<double>> components;
  std::vector<double> weights;
  std::vector<double> mixture;
};

inline MixtureInstance draw_mixture(InstanceGenerator& gen, std::size_t atoms) {
  MixtureInstance m;
  const std::size_t k = 2 + gen.index(3);
  m.weights = gen.weights(k);
  m.mixture.assign(atoms, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    m.components.push_back(gen.distribution(atoms, true));
    for (std::size_t x = 0; x < atoms; ++x) m.mixture[x] += m.weights[j] * m.components[j][x];
  }
  return m;
}

inline RatioRange joint_range(const std::vector<std::vector<double>>& ps, std::span<const double> q) {
  RatioRange out{kInf, 0.0};
  for (const auto& p : ps) {
    const auto r = ratio_range(p, q);
    out.lo = std::min(out.lo, r.lo);
    out.hi = std::max(out.hi, r.hi);
  }
  return out;
}

}  // namespace detail

// D(P||Q) <= sum mu D(P_j||Q) - kappa sum mu TV(P_j, P)^2 with P the mu-mixture.
inline void check_mixture_reverse_pinsker(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = bayes_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto mix = detail::draw_mixture(gen, n);
    const auto q = gen.distribution(n, true);
    const double kappa_range_hi = detail::joint_range(mix.components, q).hi;
    double tv2 = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < mix.components.size(); ++j) {
      const double tv = total_variation(mix.components[j], mix.mixture);
      tv2 += mix.weights[j] * tv * tv;
      for (std::size_t x = 0; x < n; ++x) {
        const double d = mix.components[j][x] - mix.mixture[x];
        if (d == 0.0) continue;
        sq += q[x] > 0.0 ? mix.weights[j] * d * d / q[x] : kInf;
      }
    }
    for (const auto& g : panel) {
      const double kappa = kappa_on(g, detail::joint_range(mix.components, q).interval()).kappa;
      double avg = 0.0;
      for (std::size_t j = 0; j < mix.components.size(); ++j)
        avg += mix.weights[j] * f_divergence(g, mix.components[j], q).value;
      const double lhs = f_divergence(g, mix.mixture, q).value;
      auto r = ctx.at_most(tag(i, n, g.name()), lhs, avg - kappa * tv2);
      r.note("kappa", kappa).note("ratio_max", kappa_range_hi);
      if (std::isfinite(avg)) {
        r.note("chi2_form_margin", avg - (kappa > 0.0 ? kappa / 2.0 * sq : 0.0) - lhs);
        r.note("derived_2kappa_margin", avg - 2.0 * kappa * tv2 - lhs);
      }
      ctx.emit(std::move(r));
    }
  }
}

// kappa sum mu TV(P_j, P)^2 <= sum mu D(P_j||P).
inline void check_barycenter_reverse_pinsker(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = bayes_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto mix = detail::draw_mixture(gen, n);
    double tv2 = 0.0;
    for (std::size_t j = 0; j < mix.components.size(); ++j) {
      const double tv = total_variation(mix.components[j], mix.mixture);
      tv2 += mix.weights[j] * tv * tv;
    }
    const auto range = detail::joint_range(mix.components, mix.mixture);
    for (const auto& g : panel) {
      const double kappa = kappa_on(g, range.interval()).kappa;
      double avg = 0.0;
      for (std::size_t j = 0; j < mix.components.size(); ++j)
        avg += mix.weights[j] * f_divergence(g, mix.components[j], mix.mixture).value;
      auto r = ctx.at_least(tag(i, n, g.name()), avg, kappa * tv2);
      r.note("kappa", kappa).note("derived_2kappa_margin", avg - 2.0 * kappa * tv2);
      ctx.emit(std::move(r));
    }
  }
}

// Two-point pairs with D_f / TV above (1/2) f(t)/t, a threshold that grows
// with t when f is strongly convex.
inline void check_no_reverse_pinsker(CheckContext& ctx) {
  const std::vector<ConvexGenerator> panel{make_builtin(Builtin::kl), make_builtin(Builtin::pearson_chi2),
                                           make_builtin(Builtin::sason_s, 1.0),
                                           make_builtin(Builtin::alpha_divergence, 3.5)};
  const double ts[] = {10.0, 100.0, 1000.0};
  for (const auto& g : panel) {
    const auto gn = normalized(g);
    double first = 0.0, last = 0.0;
    for (double t : ts) {
      const std::vector<double> p{0.5, 0.5};
      const std::vector<double> q{1.0 / (2.0 * t), 1.0 - 1.0 / (2.0 * t)};
      const double threshold = 0.5 * gn.eval(t) / t;
      const double ratio = f_divergence(g, p, q).value / total_variation(p, q);
      if (t == ts[0]) first = threshold;
      last = threshold;
      auto r = ctx.at_least(g.name() + " t=" + format_param(t), ratio, threshold);
      r.note("threshold", threshold);
      ctx.emit(std::move(r));
    }
    ctx.emit(ctx.at_least(g.name() + " threshold growth", last - first, 1.0));
  }
}

// D_f <= (f(0) + f*(0)) TV whenever the constant is finite.
inline void check_tv_ratio_cap(CheckContext& ctx) {
  std::vector<ConvexGenerator> panel;
  for (const auto& g : builtin_panel())
    if (std::isfinite(g.f_at_zero() + g.f_star_at_zero())) panel.push_back(g);
  auto& gen = ctx.gen();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double tv = total_variation(p, q);
    for (const auto& g : panel) {
      const double cap = g.f_at_zero() + g.f_star_at_zero();
      auto r = ctx.at_most(tag(i, n, g.name()), f_divergence(g, p, q).value, cap * tv);
      r.note("cap", cap);
      ctx.emit(std::move(r));
    }
  }
}

// Merging atoms never increases a divergence.
inline void check_coarsening_dpi(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const auto part = gen.partition(n);
    const auto P = DiscreteDistribution::from_masses(p);
    const auto Q = DiscreteDistribution::from_masses(q);
    const auto cp = coarsen(P, part);
    const auto cq = coarsen(Q, part);
    for (const auto& g : panel) {
      auto r = ctx.at_most(tag(i, n, g.name() + " groups=" + std::to_string(part.size())),
                           f_divergence(g, cp, cq).value, f_divergence(g, P, Q).value);
      ctx.emit(std::move(r));
    }
  }
}

// D_{f*}(P||Q) = D_f(Q||P).
inline void check_dual_swap(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    for (const auto& g : panel)
      ctx.emit(ctx.identity(tag(i, n, g.name()), f_divergence(dual(g), p, q).value,
                            f_divergence(g, q, p).value, 1e-12));
  }
}

// binary_divergence(g, t, s) against the two-point evaluator.
inline void check_binary_consistency(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  const double corners[] = {0.0, 1.0, 0.5};
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const double t = gen.bernoulli(0.2) ? corners[gen.index(3)] : gen.uniform();
    const double s = gen.bernoulli(0.2) ? corners[gen.index(3)] : gen.uniform();
    const std::vector<double> p{t, 1.0 - t};
    const std::vector<double> q{s, 1.0 - s};
    for (const auto& g : panel)
      ctx.emit(ctx.identity("#" + std::to_string(i) + " " + g.name() + " t=" + format_param(t) +
                                " s=" + format_param(s),
                            binary_divergence(g, t, s), f_divergence(g, p, q).value, 1e-12));
  }
}

// Adding c (t - 1) to the generator leaves every divergence unchanged.
inline void check_affine_invariance(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  const double shifts[] = {-3.0, 1.0, 7.0};
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double c = shifts[gen.index(3)];
    for (const auto& g : panel)
      ctx.emit(ctx.identity(tag(i, n, g.name() + " c=" + format_param(c)),
                            f_divergence(affine_shift(g, c), p, q).value, f_divergence(g, p, q).value,
                            1e-10 * (1.0 + std::abs(c))));
  }
}

}  // namespace divkit::harness
