#pragma once

// f-divergences between finite distributions:
//   D_f(P||Q) = sum_{pq>0} q f(p/q) + f(0) Q({p=0}) + f*(0) P({q=0}).

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divkit/distribution.hpp"
#include "divkit/errors.hpp"
#include "divkit/extended.hpp"
#include "divkit/generator.hpp"

namespace divkit {

struct DivergenceValue {
  double value = 0.0;
  double core = 0.0;         // sum over atoms with p > 0 and q > 0
  double zero_p_term = 0.0;  // f(0) * Q({p = 0})
  double zero_q_term = 0.0;  // f*(0) * P({q = 0})
};

// Generic evaluator over aligned mass vectors.
inline DivergenceValue f_divergence(const ConvexGenerator& g, std::span<const double> p,
                                    std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidArgument("f_divergence: mass vectors differ in length");
  DivergenceValue out;
  double q_where_p_zero = 0.0;
  double p_where_q_zero = 0.0;
  const Interval& dom = g.domain();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    const double qi = q[i];
    if (pi > 0.0 && qi > 0.0) {
      const double ratio = pi / qi;
      if (!dom.contains(ratio))
        throw DomainError("likelihood ratio " + std::to_string(ratio) + " outside domain " +
                          dom.to_string() + " of " + g.name());
      out.core += qi * g.eval(ratio);
    } else if (pi > 0.0) {
      p_where_q_zero += pi;
    } else if (qi > 0.0) {
      q_where_p_zero += qi;
    }
  }
  out.zero_p_term = weighted_limit(q_where_p_zero, g.f_at_zero());
  out.zero_q_term = weighted_limit(p_where_q_zero, g.f_star_at_zero());
  out.value = clamp_tiny(out.core + out.zero_p_term + out.zero_q_term);
  return out;
}

inline DivergenceValue f_divergence(const ConvexGenerator& g, const DiscreteDistribution& p,
                                    const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return f_divergence(g, a.masses[0], a.masses[1]);
}

// D_f(t||s) = s f(t/s) + (1-s) f((1-t)/(1-s)) with the boundary conventions.
inline double binary_divergence(const ConvexGenerator& g, double t, double s) {
  if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0))
    throw InvalidArgument("binary_divergence arguments must lie in [0, 1]");
  return clamp_tiny(perspective(g, t, s) + perspective(g, 1.0 - t, 1.0 - s));
}

// |P - Q|_TV = sup_A |P(A) - Q(A)| = (1/2) sum |p - q|.
inline double total_variation(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2.0;
}

inline double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return total_variation(a.masses[0], a.masses[1]);
}

inline double chi_square(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) {
      const double d = p[i] - q[i];
      s += d * d / q[i];
    } else if (p[i] > 0.0) {
      return kInf;
    }
  }
  return clamp_tiny(s);
}

inline double chi_square(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return chi_square(a.masses[0], a.masses[1]);
}

inline double kl(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    s += p[i] * std::log(p[i] / q[i]);
  }
  return clamp_tiny(s);
}

inline double kl(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return kl(a.masses[0], a.masses[1]);
}

// Jensen-Shannon divergence (1/2) D(P||M) + (1/2) D(Q||M), M = (P+Q)/2.
inline double jsd(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double sum = p[i] + q[i];
    if (sum == 0.0) continue;
    const double d = (p[i] - q[i]) / sum;
    if (p[i] > 0.0) s += p[i] * std::log1p(d);
    if (q[i] > 0.0) s += q[i] * std::log1p(-d);
  }
  return clamp_tiny(s / 2.0);
}

inline double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return jsd(a.masses[0], a.masses[1]);
}

struct RatioRange {
  double lo = 1.0;
  double hi = 1.0;

  // [lo, hi], open at 0 and at an infinite upper end.
  Interval interval() const { return Interval::make(lo, hi, lo > 0.0, true); }
};

// min and max of p/q over atoms with q > 0; hi = inf when P charges {q = 0}.
inline RatioRange ratio_range(std::span<const double> p, std::span<const double> q) {
  RatioRange r{kInf, 0.0};
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) {
      const double ratio = p[i] / q[i];
      r.lo = std::min(r.lo, ratio);
      r.hi = std::max(r.hi, ratio);
      any = true;
    } else if (p[i] > 0.0) {
      r.hi = kInf;
    }
  }
  if (!any) r.lo = 0.0;
  return r;
}

inline RatioRange ratio_range(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return ratio_range(a.masses[0], a.masses[1]);
}

// Merges atoms group by group. Every support label must appear in exactly
// one group; the merged atom is labelled by joining its members with '+'.
inline DiscreteDistribution coarsen(const DiscreteDistribution& p,
                                    const std::vector<std::vector<std::string>>& partition) {
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::string> labels;
  std::vector<double> mass(partition.size(), 0.0);
  for (std::size_t gi = 0; gi < partition.size(); ++gi) {
    if (partition[gi].empty()) throw InvalidArgument("coarsen: empty group " + std::to_string(gi));
    std::string joined;
    for (const auto& label : partition[gi]) {
      if (!p.index_of(label)) throw InvalidArgument("coarsen: label '" + label + "' not in support");
      if (!group_of.emplace(label, gi).second)
        throw InvalidArgument("coarsen: label '" + label + "' appears in more than one group");
      if (!joined.empty()) joined += '+';
      joined += label;
    }
    labels.push_back(std::move(joined));
  }
  if (group_of.size() != p.size()) throw InvalidArgument("coarsen: partition does not cover the support");
  for (std::size_t i = 0; i < p.size(); ++i) mass[group_of.at(p.support()[i])] += p.mass()[i];
  return DiscreteDistribution(std::move(labels), std::move(mass));
}

// Index-based partition over the support order.
inline DiscreteDistribution coarsen(const DiscreteDistribution& p,
                                    const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<std::vector<std::string>> named;
  named.reserve(partition.size());
  for (const auto& group : partition) {
    auto& out = named.emplace_back();
    for (std::size_t i : group) {
      if (i >= p.size()) throw InvalidArgument("coarsen: atom index " + std::to_string(i) + " out of range");
      out.push_back(p.support()[i]);
    }
  }
  return coarsen(p, named);
}

}  // namespace divkit
