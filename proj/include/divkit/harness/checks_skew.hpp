#pragma once

// Checks on skew divergences, skew symmetrization and the (alpha, w) families.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "divkit/divergence.hpp"
#include "divkit/errors.hpp"
#include "divkit/generator.hpp"
#include "divkit/harness/context.hpp"
#include "divkit/skewing.hpp"

namespace divkit::harness {

namespace detail {

// Mostly interior values with an occasional endpoint or midpoint.
inline double skew_weight(InstanceGenerator& gen) {
  static constexpr double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  return gen.bernoulli(0.3) ? grid[gen.index(5)] : gen.uniform();
}

inline SkewScheme draw_scheme(InstanceGenerator& gen, bool interior) {
  const std::size_t n = 2 + gen.index(3);
  std::vector<double> alphas(n);
  for (double& a : alphas) a = interior ? gen.uniform(0.01, 0.99) : skew_weight(gen);
  return SkewScheme(std::move(alphas), gen.weights(n));
}

inline std::string describe(const SkewScheme& s) {
  std::string out = "alphas=";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + format_param(s.alphas()[i]);
  out += " weights=";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + format_param(s.weights()[i]);
  return out;
}

}  // namespace detail

// Delta_f >= (kappa/4) Delta with kappa certified on (0, 2).
inline void check_vincze_le_cam_floor(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  const auto vlc = make_builtin(Builtin::vincze_le_cam);
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double delta = f_divergence(vlc, p, q).value;
    for (const auto& g : panel) {
      const double kappa = kappa_on(g, Interval::open(0.0, 2.0)).kappa;
      const double sym = symmetrized_divergence(g, p, q);
      auto r = ctx.at_least(tag(i, n, g.name()), sym, kappa / 4.0 * delta);
      r.note("kappa", kappa);
      ctx.emit(std::move(r));
    }
  }
}

// D((1-a)P + aQ || (1-b)P + bQ) <= C(a) D_inf(a||b) TV.
inline void check_skew_kl_tv(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto kl_gen = make_builtin(Builtin::kl);
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double a = detail::skew_weight(gen);
    const double b = detail::skew_weight(gen);
    const double c = a <= b ? 1.0 - a : a;
    const double dinf = d_infinity_binary(a, b);
    const double tv = total_variation(p, q);
    const double rhs = weighted_limit(tv, weighted_limit(c, dinf));
    auto r = ctx.at_most(tag(i, n, "a=" + format_param(a) + " b=" + format_param(b)),
                         skew_divergence(kl_gen, p, q, a, b), rhs);
    r.note("d_infinity", dinf);
    ctx.emit(std::move(r));
  }
}

// D(P || tP + (1-t)Q) <= -ln t TV.
inline void check_skew_tv(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto kl_gen = make_builtin(Builtin::kl);
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double t = gen.bernoulli(0.1) ? 1.0 : gen.uniform(1e-3, 1.0);
    const double lhs = skew_divergence(kl_gen, p, q, 0.0, 1.0 - t);
    ctx.emit(ctx.at_most(tag(i, n, "t=" + format_param(t)), lhs, -std::log(t) * total_variation(p, q)));
  }
}

inline void check_jsd_tv(CheckContext& ctx) {
  auto& gen = ctx.gen();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    ctx.emit(ctx.at_most(tag(i, n), jsd(p, q), std::numbers::ln2 * total_variation(p, q)));
  }
}

// Var_w(alpha) TV^2 <= JS^{alpha,w} <= A H(w) TV.
inline void check_generalized_js_tv(CheckContext& ctx) {
  auto& gen = ctx.gen();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const auto scheme = detail::draw_scheme(gen, true);
    const double js = generalized_js(p, q, scheme);
    const double tv = total_variation(p, q);
    const std::string inst = tag(i, n, detail::describe(scheme));
    auto lower = ctx.at_least(inst + " lower", js, variance_of_alphas(scheme) * tv * tv);
    auto upper = ctx.at_most(inst + " upper", js, a_coefficient(scheme) * entropy_of_weights(scheme) * tv);
    upper.note("a_coefficient", a_coefficient(scheme)).note("entropy", entropy_of_weights(scheme));
    ctx.emit(std::move(lower));
    ctx.emit(std::move(upper));
  }
}

// chi^2_{alpha,w} <= 2 N_inf JS^{alpha,w}; the constant N_inf alone is monitored.
inline void check_generalized_chi2_js(CheckContext& ctx) {
  auto& gen = ctx.gen();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const auto scheme = detail::draw_scheme(gen, false);
    const std::string inst = tag(i, n, detail::describe(scheme));
    double nin = 0.0;
    try {
      nin = n_infinity(scheme);
    } catch (const DegenerateError& e) {
      ctx.emit(ctx.skip(inst, e.what(), Verdict::degenerate));
      continue;
    }
    const double chi2 = generalized_chi2(p, q, scheme);
    const double js = generalized_js(p, q, scheme);
    auto r = ctx.at_most(inst, chi2, 2.0 * nin * js);
    r.note("n_infinity", nin).note("stated_constant_margin", nin * js - chi2);
    ctx.emit(std::move(r));
  }
}

// Mixture route against the skewed generator.
inline void check_skew_generator_equivalence(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    const double t = detail::skew_weight(gen);
    const double s = detail::skew_weight(gen);
    const auto& g = gen.pick(panel);
    const double direct = skew_divergence(g, p, q, t, s);
    const double via = f_divergence(skew_generator(g, {1.0 - t, 1.0 - s}), p, q).value;
    ctx.emit(ctx.identity(tag(i, n, g.name() + " t=" + format_param(t) + " s=" + format_param(s)), direct, via,
                          1e-12));
  }
}

// Delta_{chi^2} = Delta/2, Delta_f symmetric, and Delta_{kl} = JSD.
inline void check_symmetrization_identities(CheckContext& ctx) {
  auto& gen = ctx.gen();
  const auto panel = builtin_panel();
  const auto chi2 = make_builtin(Builtin::pearson_chi2);
  const auto vlc = make_builtin(Builtin::vincze_le_cam);
  const auto kl_gen = make_builtin(Builtin::kl);
  for (std::size_t i = 0; i < ctx.count(); ++i) {
    const std::size_t n = gen.support_size();
    const auto [p, q] = gen.pair(n, Zeros::any);
    ctx.emit(ctx.identity(tag(i, n, "chi2 half vincze_le_cam"), symmetrized_divergence(chi2, p, q),
                          f_divergence(vlc, p, q).value / 2.0, 1e-12));
    ctx.emit(ctx.identity(tag(i, n, "kl jsd"), symmetrized_divergence(kl_gen, p, q), jsd(p, q), 1e-12));
    const auto& g = gen.pick(panel);
    ctx.emit(ctx.identity(tag(i, n, g.name() + " symmetric"), symmetrized_divergence(g, p, q),
                          symmetrized_divergence(g, q, p), 1e-12));
    ctx.emit(ctx.identity(tag(i, n, g.name() + " generator"), symmetrized_divergence(g, p, q),
                          f_divergence(skew_symmetrization(g), p, q).value, 1e-12));
  }
}

}  // namespace divkit::harness
