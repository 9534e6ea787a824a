#pragma once

// Bayes risk under 0-1 loss, the convex decompositions induced by the Bayes
// estimator, the sharpened Guntuboyina-type bound and the Jensen-Shannon
// series for relative entropy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divkit/distribution.hpp"
#include "divkit/divergence.hpp"
#include "divkit/errors.hpp"
#include "divkit/extended.hpp"
#include "divkit/generator.hpp"
#include "divkit/report.hpp"

namespace divkit {

class BayesProblem {
 public:
  BayesProblem(std::vector<DiscreteDistribution> hypotheses, std::vector<double> prior)
      : prior_(std::move(prior)) {
    if (hypotheses.empty()) throw InvalidArgument("bayes problem needs at least one hypothesis");
    if (hypotheses.size() != prior_.size())
      throw InvalidArgument("prior has " + std::to_string(prior_.size()) + " entries for " +
                            std::to_string(hypotheses.size()) + " hypotheses");
    double total = 0.0;
    for (std::size_t i = 0; i < prior_.size(); ++i) {
      if (!(prior_[i] > 0.0 && std::isfinite(prior_[i])))
        throw InvalidArgument("prior weight " + std::to_string(i) + " must be positive");
      total += prior_[i];
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw InvalidArgument("prior sums to " + std::to_string(total) + ", not 1");
    for (double& l : prior_) l /= total;
    std::vector<const DiscreteDistribution*> ptrs;
    for (const auto& h : hypotheses) ptrs.push_back(&h);
    auto a = align(ptrs);
    labels_ = std::move(a.labels);
    p_ = std::move(a.masses);
  }

  // Hypotheses already laid out on a common support.
  static BayesProblem from_masses(std::vector<std::vector<double>> hypotheses, std::vector<double> prior) {
    std::vector<DiscreteDistribution> d;
    for (auto& h : hypotheses) d.push_back(DiscreteDistribution::from_masses(std::move(h)));
    return BayesProblem(std::move(d), std::move(prior));
  }

  std::size_t size() const noexcept { return p_.size(); }
  std::size_t support_size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<double>>& hypotheses() const noexcept { return p_; }
  const std::vector<double>& hypothesis(std::size_t i) const { return p_.at(i); }
  const std::vector<double>& prior() const noexcept { return prior_; }

  // p = sum_i lambda_i p_i.
  std::vector<double> barycenter() const {
    std::vector<double> m(support_size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t x = 0; x < m.size(); ++x) m[x] += prior_[i] * p_[i][x];
    return m;
  }

  // Masses of q over this problem's support; throws if q charges other atoms.
  std::vector<double> masses_of(const DiscreteDistribution& q) const {
    for (const auto& label : q.support())
      if (q.mass_of(label) > 0.0 && std::find(labels_.begin(), labels_.end(), label) == labels_.end())
        throw InvalidArgument("reference charges atom '" + label + "' outside the hypotheses' support");
    std::vector<double> m(support_size());
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = q.mass_of(labels_[x]);
    return m;
  }

  // The same problem over the union of its support and q's.
  BayesProblem extended_by(const DiscreteDistribution& q) const {
    std::vector<DiscreteDistribution> hs;
    std::vector<std::string> labels = labels_;
    for (const auto& label : q.support())
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    for (const auto& p : p_) {
      std::vector<double> m(p);
      m.resize(labels.size(), 0.0);
      hs.emplace_back(labels, std::move(m));
    }
    return BayesProblem(std::move(hs), prior_);
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> p_;
  std::vector<double> prior_;
};

struct BayesEstimate {
  std::vector<std::size_t> estimator;  // T(x), hypothesis index per atom
  double risk = 0.0;
};

// T(x) = argmax_i lambda_i p_i(x), ties to the smallest index;
// R = 1 - sum_x lambda_T p_T, summed as the mass off the argmax.
inline BayesEstimate bayes_estimator(const BayesProblem& prob) {
  BayesEstimate out;
  out.estimator.resize(prob.support_size());
  const auto& lambda = prob.prior();
  for (std::size_t x = 0; x < prob.support_size(); ++x) {
    std::size_t best = 0;
    double best_value = lambda[0] * prob.hypothesis(0)[x];
    for (std::size_t i = 1; i < prob.size(); ++i) {
      const double v = lambda[i] * prob.hypothesis(i)[x];
      if (v > best_value) {
        best = i;
        best_value = v;
      }
    }
    out.estimator[x] = best;
    for (std::size_t i = 0; i < prob.size(); ++i)
      if (i != best) out.risk += lambda[i] * prob.hypothesis(i)[x];
  }
  out.risk = std::clamp(out.risk, 0.0, 1.0);
  return out;
}

struct Decomposition {
  std::vector<std::size_t> estimator;
  double risk = 0.0;
  double q_mass = 0.0;
  std::vector<double> q;
  std::vector<double> barycenter;
  // Absent when the matching mass (1 - Q, Q, 1 - R, R) vanishes.
  std::optional<std::vector<double>> q1, q2, rho1, rho2;

  bool degenerate() const noexcept { return !q1 || !q2 || !rho1 || !rho2; }
};

inline Decomposition decompose(const BayesProblem& prob, std::span<const double> q) {
  if (q.size() != prob.support_size()) throw InvalidArgument("decompose: reference has wrong length");
  const auto est = bayes_estimator(prob);
  const auto& lambda = prob.prior();
  const std::size_t m = prob.support_size();
  Decomposition d;
  d.estimator = est.estimator;
  d.risk = est.risk;
  d.q.assign(q.begin(), q.end());
  d.barycenter = prob.barycenter();

  std::vector<double> a(m), b(m), r1(m), r2(m);
  double a_mass = 0.0, b_mass = 0.0, r1_mass = 0.0, r2_mass = 0.0;
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t t = d.estimator[x];
    a[x] = lambda[t] * q[x];
    b[x] = (1.0 - lambda[t]) * q[x];
    r1[x] = lambda[t] * prob.hypothesis(t)[x];
    for (std::size_t i = 0; i < prob.size(); ++i)
      if (i != t) r2[x] += lambda[i] * prob.hypothesis(i)[x];
    a_mass += a[x];
    b_mass += b[x];
    r1_mass += r1[x];
    r2_mass += r2[x];
  }
  d.q_mass = std::clamp(b_mass, 0.0, 1.0);
  auto normalize = [](std::vector<double> v, double mass) -> std::optional<std::vector<double>> {
    if (!(mass > 0.0)) return std::nullopt;
    for (double& x : v) x /= mass;
    return v;
  };
  d.q1 = normalize(std::move(a), a_mass);
  d.q2 = normalize(std::move(b), b_mass);
  d.rho1 = normalize(std::move(r1), r1_mass);
  d.rho2 = normalize(std::move(r2), r2_mass);
  return d;
}

inline Decomposition decompose(const BayesProblem& prob, const DiscreteDistribution& q) {
  return decompose(prob, prob.masses_of(q));
}

struct WTerms {
  double w0 = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double w_total = 0.0;
  bool degenerate = false;
};

// w1 = ((1-R)^2/(1-Q)) chi2(rho1||q1), w2 = (R^2/Q) chi2(rho2||q2),
// w0 = sum_x sum_{i != T} lambda_i (p_i - m)^2 / q with m the lambda-weighted
// mean of {p_i : i != T(x)}.
inline WTerms w_terms(const BayesProblem& prob, std::span<const double> q) {
  const auto d = decompose(prob, q);
  const auto& lambda = prob.prior();
  WTerms w;
  w.degenerate = d.degenerate();
  const double r = d.risk;
  const double qm = d.q_mass;
  if (d.rho1 && d.q1) w.w1 = weighted_limit((1.0 - r) * (1.0 - r) / (1.0 - qm), chi_square(*d.rho1, *d.q1));
  if (d.rho2 && d.q2) w.w2 = weighted_limit(r * r / qm, chi_square(*d.rho2, *d.q2));
  for (std::size_t x = 0; x < prob.support_size(); ++x) {
    const std::size_t t = d.estimator[x];
    if (prob.size() <= 2) break;
    double mean = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i)
      if (i != t) mean += lambda[i] * prob.hypothesis(i)[x];
    mean /= 1.0 - lambda[t];
    double spread = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
      if (i == t) continue;
      const double dev = prob.hypothesis(i)[x] - mean;
      spread += lambda[i] * dev * dev;
    }
    if (spread == 0.0) continue;
    if (q[x] > 0.0) {
      w.w0 += spread / q[x];
    } else {
      w.w0 = kInf;
    }
  }
  w.w0 = clamp_tiny(w.w0);
  w.w_total = w.w0 + w.w1 + w.w2;
  return w;
}

inline WTerms w_terms(const BayesProblem& prob, const DiscreteDistribution& q) {
  return w_terms(prob, prob.masses_of(q));
}

// Ratio range of p_i/q jointly over all hypotheses.
inline RatioRange joint_ratio_range(const BayesProblem& prob, std::span<const double> q) {
  RatioRange out{kInf, 0.0};
  for (const auto& p : prob.hypotheses()) {
    const auto r = ratio_range(p, q);
    out.lo = std::min(out.lo, r.lo);
    out.hi = std::max(out.hi, r.hi);
  }
  return out;
}

// sum_i lambda_i D_g(p_i||q) >= D_g(R||Q) + kappa W / 2.
inline CheckReport guntuboyina_bound(const BayesProblem& prob, std::span<const double> q,
                                     const ConvexGenerator& g, double tolerance = kDefaultTolerance,
                                     std::string check_id = "guntuboyina_bound",
                                     std::string instance = {}) {
  double lhs = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i)
    lhs += weighted_limit(prob.prior()[i], f_divergence(g, prob.hypothesis(i), q).value);
  const auto d = decompose(prob, q);
  const auto w = w_terms(prob, q);
  const double kappa = kappa_on(g, joint_ratio_range(prob, q).interval()).kappa;
  const double w_part = kappa > 0.0 ? kappa * w.w_total / 2.0 : 0.0;
  const double binary = binary_divergence(g, d.risk, d.q_mass);
  auto r = CheckReport::at_least(std::move(check_id), std::move(instance), lhs, binary + w_part, tolerance);
  r.note("kappa", kappa).note("risk", d.risk).note("q_mass", d.q_mass);
  r.note("w0", w.w0).note("w1", w.w1).note("w2", w.w2);
  r.note("binary_term", binary);
  if (w.degenerate) r.note("degenerate_decomposition", 1.0);
  return r;
}

inline CheckReport guntuboyina_bound(const BayesProblem& prob, const DiscreteDistribution& q,
                                     const ConvexGenerator& g, double tolerance = kDefaultTolerance) {
  return guntuboyina_bound(prob, prob.masses_of(q), g, tolerance);
}

// sum_i t_i D(P_i||Q) = D(P||Q) + sum_i t_i D(P_i||P), P = sum_i t_i P_i.
inline CheckReport compensation_identity_check(const BayesProblem& prob, std::span<const double> q,
                                               double tolerance = kDefaultTolerance,
                                               std::string check_id = "compensation_identity",
                                               std::string instance = {}) {
  const auto p = prob.barycenter();
  double lhs = 0.0, spread = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    lhs += prob.prior()[i] * kl(prob.hypothesis(i), q);
    spread += prob.prior()[i] * kl(prob.hypothesis(i), p);
  }
  const double rhs = kl(p, q) + spread;
  if (std::isinf(lhs) || std::isinf(rhs))
    return CheckReport::skip(std::move(check_id), std::move(instance), "infinite relative entropy");
  return CheckReport::identity(std::move(check_id), std::move(instance), lhs, rhs, tolerance);
}

inline CheckReport compensation_identity_check(const BayesProblem& prob, const DiscreteDistribution& q,
                                               double tolerance = kDefaultTolerance) {
  return compensation_identity_check(prob, prob.masses_of(q), tolerance);
}

inline constexpr double kSeriesIncrementFloor = 1e-12;

struct PinskerSeries {
  std::vector<double> partial_sums;
  // 2^k (chi2(M1(k)||M_{k+1}) + chi2(M2(k)||M_{k+1})) / 2
  std::vector<double> lower_bound_terms;
  // Same terms with the decomposition weights (1 + V_k)^2 and (1 - V_k)^2, V_k = 2^-k TV.
  std::vector<double> weighted_lower_bound_terms;
  double kl = 0.0;
  double total_variation = 0.0;
  bool diverges = false;
  bool converged = false;

  double pinsker() const { return 2.0 * total_variation * total_variation; }
  double sharpened_bound() const {
    double s = pinsker();
    for (double t : lower_bound_terms) s += t;
    return s;
  }
  double weighted_bound() const {
    double s = pinsker();
    for (double t : weighted_lower_bound_terms) s += t;
    return s;
  }
};

// D(P1||P2) = 2 sum_k 2^k JSD(M_k||P2), M_k = 2^-k P1 + (1 - 2^-k) P2.
inline PinskerSeries pinsker_series(std::span<const double> p1, std::span<const double> p2,
                                    std::size_t max_terms) {
  if (p1.size() != p2.size()) throw InvalidArgument("pinsker_series: mass vectors differ in length");
  PinskerSeries s;
  s.kl = kl(p1, p2);
  s.total_variation = total_variation(p1, p2);
  if (std::isinf(s.kl)) {
    s.diverges = true;
    return s;
  }
  const std::size_t n = p1.size();
  std::vector<double> diff(n);
  for (std::size_t x = 0; x < n; ++x) diff[x] = p1[x] - p2[x];
  const double v = s.total_variation;
  double sum = 0.0;
  double scale = 1.0;  // 2^-k
  for (std::size_t k = 0; k < max_terms; ++k, scale /= 2.0) {
    // JSD(M_k||P2) with M_k = P2 + e, e = 2^-k (P1 - P2), midpoint P2 + e/2.
    double js = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (p2[x] == 0.0) continue;
      const double e = scale * diff[x];
      const double mk = p2[x] + e;
      const double mid = p2[x] + e / 2.0;
      const double u = (e / 2.0) / mid;
      if (mk > 0.0) js += mk * std::log1p(u);
      js += p2[x] * std::log1p(-u);
    }
    js = std::max(js / 2.0, 0.0);
    const double increment = 2.0 / scale * js;
    sum += increment;
    s.partial_sums.push_back(sum);

    const double vk = scale * v;
    const double z1 = 1.0 + vk;
    const double z2 = 1.0 - vk;
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (p2[x] == 0.0) continue;
      const double e = scale * diff[x];
      const double next = p2[x] + e / 2.0;
      const double m1 = (p2[x] + (diff[x] > 0.0 ? e : 0.0)) / z1;
      const double m2 = (p2[x] + (diff[x] > 0.0 ? 0.0 : e)) / z2;
      c1 += (m1 - next) * (m1 - next) / next;
      c2 += (m2 - next) * (m2 - next) / next;
    }
    if (!(z2 > 0.0)) c2 = 0.0;
    s.lower_bound_terms.push_back((c1 + c2) / (2.0 * scale));
    s.weighted_lower_bound_terms.push_back((z1 * z1 * c1 + z2 * z2 * c2) / (2.0 * scale));

    if (increment < kSeriesIncrementFloor) {
      s.converged = true;
      break;
    }
  }
  return s;
}

inline PinskerSeries pinsker_series(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                                    std::size_t max_terms) {
  const auto a = align(p1, p2);
  return pinsker_series(a.masses[0], a.masses[1], max_terms);
}

}  // namespace divkit
