#pragma once

// Skew divergences D_f((1-t)P + tQ || (1-s)P + sQ), skew symmetrization,
// generalized (alpha, w) skew families and their Renyi-infinity constants.
//
// Two parametrizations coexist:
//   * skew_divergence(g, P, Q, t, s) takes the weights on Q of the two
//     mixtures, (1-t)P + tQ against (1-s)P + sQ;
//   * GeneratorSkewParams{r, t} takes the weights on P, rP + (1-r)Q against
//     tP + (1-t)Q.
// skew_divergence(g, P, Q, t, s) == D_{skew_generator(g, {1-t, 1-s})}(P||Q).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "divkit/distribution.hpp"
#include "divkit/divergence.hpp"
#include "divkit/errors.hpp"
#include "divkit/extended.hpp"
#include "divkit/generator.hpp"

namespace divkit {

struct GeneratorSkewParams {
  double num_weight = 1.0;  // r: weight of x in the numerator mixture
  double den_weight = 0.0;  // t: weight of x in the denominator mixture
};

// x -> (t x + 1 - t) f((r x + 1 - r) / (t x + 1 - t)), the generator of
// D_f(rP + (1-r)Q || tP + (1-t)Q).
inline ConvexGenerator skew_generator(const ConvexGenerator& g, GeneratorSkewParams params) {
  const double r = params.num_weight;
  const double t = params.den_weight;
  if (!(r >= 0.0 && r <= 1.0 && t >= 0.0 && t <= 1.0))
    throw InvalidArgument("skew weights must lie in [0, 1]");
  if (!(g.domain() == Interval::positive_reals()))
    throw InvalidArgument("skew_generator needs a generator on all of (0, inf)");
  // 1 + w (x - 1) is exactly 1 at x = 1, which keeps f(1) = 0 exact.
  auto eval = [g, r, t](double x) { return perspective(g, 1.0 + r * (x - 1.0), 1.0 + t * (x - 1.0)); };
  return ConvexGenerator("skew(" + g.name() + "," + format_param(r) + "," + format_param(t) + ")",
                         eval, perspective(g, 1.0 - r, 1.0 - t), perspective(g, r, t),
                         Interval::positive_reals(), std::nullopt,
                         {{"num_weight", r}, {"den_weight", t}});
}

namespace detail {

inline void check_weight(double w, const char* what) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
}

inline std::vector<double> mix(std::span<const double> p, std::span<const double> q, double on_q) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = (1.0 - on_q) * p[i] + on_q * q[i];
  return m;
}

}  // namespace detail

// D_g((1-t)P + tQ || (1-s)P + sQ) on aligned masses.
inline double skew_divergence(const ConvexGenerator& g, std::span<const double> p,
                              std::span<const double> q, double t, double s) {
  detail::check_weight(t, "skew t");
  detail::check_weight(s, "skew s");
  const auto num = detail::mix(p, q, t);
  const auto den = detail::mix(p, q, s);
  return f_divergence(g, num, den).value;
}

inline double skew_divergence(const ConvexGenerator& g, const DiscreteDistribution& p,
                              const DiscreteDistribution& q, double t, double s) {
  const auto a = align(p, q);
  return skew_divergence(g, a.masses[0], a.masses[1], t, s);
}

// Generator of Delta_g(P||Q) = (1/2) D_g(P||M) + (1/2) D_g(Q||M), M = (P+Q)/2:
// x -> ((1+x)/4) (g(2x/(1+x)) + g(2/(1+x))).
inline ConvexGenerator skew_symmetrization(const ConvexGenerator& g) {
  if (!(g.domain() == Interval::positive_reals()))
    throw InvalidArgument("skew_symmetrization needs a generator on all of (0, inf)");
  auto eval = [g](double x) {
    if (std::isinf(x)) return kInf;
    const double quarter = (1.0 + x) / 4.0;
    return quarter * (g.eval(2.0 * x / (1.0 + x)) + g.eval(2.0 / (1.0 + x)));
  };
  const double boundary = (g.f_at_zero() + g.eval(2.0)) / 4.0;
  return ConvexGenerator("sym(" + g.name() + ")", eval, boundary, boundary);
}

// Delta_g(P||Q) evaluated on the mixtures directly.
inline double symmetrized_divergence(const ConvexGenerator& g, std::span<const double> p,
                                     std::span<const double> q) {
  const auto m = detail::mix(p, q, 0.5);
  return clamp_tiny(0.5 * f_divergence(g, p, m).value + 0.5 * f_divergence(g, q, m).value);
}

inline double symmetrized_divergence(const ConvexGenerator& g, const DiscreteDistribution& p,
                                     const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return symmetrized_divergence(g, a.masses[0], a.masses[1]);
}

// Skew coefficients alpha_i in [0, 1] with positive weights w_i summing to 1.
class SkewScheme {
 public:
  SkewScheme(std::vector<double> alphas, std::vector<double> weights)
      : alphas_(std::move(alphas)), weights_(std::move(weights)) {
    if (alphas_.empty()) throw InvalidArgument("skew scheme needs at least one component");
    if (alphas_.size() != weights_.size())
      throw InvalidArgument("skew scheme: alphas and weights differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
      if (!(alphas_[i] >= 0.0 && alphas_[i] <= 1.0))
        throw InvalidArgument("skew scheme: alpha_" + std::to_string(i) + " outside [0, 1]");
      if (!(weights_[i] > 0.0 && std::isfinite(weights_[i])))
        throw InvalidArgument("skew scheme: weight_" + std::to_string(i) + " must be positive");
      total += weights_[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw InvalidArgument("skew scheme: weights sum to " + std::to_string(total) + ", not 1");
    for (std::size_t i = 0; i < alphas_.size(); ++i) alpha_bar_ += weights_[i] * alphas_[i];
    alpha_bar_ = std::clamp(alpha_bar_, 0.0, 1.0);
  }

  const std::vector<double>& alphas() const noexcept { return alphas_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return alphas_.size(); }
  double alpha_bar() const noexcept { return alpha_bar_; }

  bool homogeneous() const noexcept {
    return std::all_of(alphas_.begin(), alphas_.end(), [&](double a) { return a == alphas_.front(); });
  }

 private:
  std::vector<double> alphas_;
  std::vector<double> weights_;
  double alpha_bar_ = 0.0;
};

// sum_i w_i D_g((1-alpha_i)P + alpha_i Q || (1-alpha_bar)P + alpha_bar Q).
inline double generalized_skew_divergence(const ConvexGenerator& g, std::span<const double> p,
                                          std::span<const double> q, const SkewScheme& scheme) {
  const auto den = detail::mix(p, q, scheme.alpha_bar());
  double total = 0.0;
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    const auto num = detail::mix(p, q, scheme.alphas()[i]);
    total += weighted_limit(scheme.weights()[i], f_divergence(g, num, den).value);
  }
  return clamp_tiny(total);
}

inline double generalized_skew_divergence(const ConvexGenerator& g, const DiscreteDistribution& p,
                                          const DiscreteDistribution& q, const SkewScheme& scheme) {
  const auto a = align(p, q);
  return generalized_skew_divergence(g, a.masses[0], a.masses[1], scheme);
}

// Generalized Jensen-Shannon divergence JS^{alpha,w}.
inline double generalized_js(std::span<const double> p, std::span<const double> q,
                             const SkewScheme& scheme) {
  return generalized_skew_divergence(make_builtin(Builtin::kl), p, q, scheme);
}

// chi^2_{alpha,w}: the generalized skew divergence of Pearson's chi^2.
inline double generalized_chi2(std::span<const double> p, std::span<const double> q,
                               const SkewScheme& scheme) {
  return generalized_skew_divergence(make_builtin(Builtin::pearson_chi2), p, q, scheme);
}

namespace detail {

// a / b with 0/0 = 1 and x/0 = inf.
inline double ratio_or_inf(double a, double b) {
  if (b > 0.0) return a / b;
  return a > 0.0 ? kInf : 1.0;
}

}  // namespace detail

// Renyi-infinity divergence between Bernoulli(a) and Bernoulli(b):
// ln max{a/b, (1-a)/(1-b)}.
inline double d_infinity_binary(double a, double b) {
  detail::check_weight(a, "d_infinity a");
  detail::check_weight(b, "d_infinity b");
  return std::log(std::max(detail::ratio_or_inf(a, b), detail::ratio_or_inf(1.0 - a, 1.0 - b)));
}

// N_inf(alpha, w) = max_i max{alpha_i / alpha_bar, (1-alpha_i)/(1-alpha_bar)},
// the cap on d((1-alpha_i)P + alpha_i Q) / d((1-alpha_bar)P + alpha_bar Q).
inline double n_infinity(const SkewScheme& scheme) {
  if (scheme.homogeneous()) return 1.0;
  const double bar = scheme.alpha_bar();
  if (!(bar > 0.0 && bar < 1.0))
    throw DegenerateError("n_infinity: mean skew " + std::to_string(bar) +
                          " on the boundary of [0, 1] with heterogeneous alphas");
  double n = 1.0;
  for (double a : scheme.alphas()) n = std::max({n, a / bar, (1.0 - a) / (1.0 - bar)});
  return n;
}

// max_i |alpha_i - alpha_bar_i| where alpha_bar_i averages the other alphas.
inline double a_coefficient(const SkewScheme& scheme) {
  if (scheme.size() == 1) return 0.0;
  const auto& a = scheme.alphas();
  const auto& w = scheme.weights();
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double others = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) others += w[j] * a[j];
    out = std::max(out, std::abs(a[i] - others / (1.0 - w[i])));
  }
  return out;
}

// Var_w(alpha) = sum_i w_i (alpha_i - alpha_bar)^2.
inline double variance_of_alphas(const SkewScheme& scheme) {
  double v = 0.0;
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    const double d = scheme.alphas()[i] - scheme.alpha_bar();
    v += scheme.weights()[i] * d * d;
  }
  return v;
}

// H(w) in nats.
inline double entropy_of_weights(const SkewScheme& scheme) {
  double h = 0.0;
  for (double w : scheme.weights()) h -= w * std::log(w);
  return h;
}

}  // namespace divkit
