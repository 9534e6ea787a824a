#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "divkit/errors.hpp"

namespace divkit {

// Masses within this distance of 1 are renormalized; anything further off is
// rejected.
inline constexpr double kMassTolerance = 1e-9;

// Finite probability distribution over labelled atoms. Masses are
// nonnegative and sum to 1.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<std::string> support, std::vector<double> mass)
      : support_(std::move(support)), mass_(std::move(mass)) {
    if (support_.size() != mass_.size())
      throw InvalidArgument("support and mass have different lengths (" +
                            std::to_string(support_.size()) + " vs " +
                            std::to_string(mass_.size()) + ")");
    if (support_.empty()) throw InvalidArgument("distribution has empty support");
    std::unordered_set<std::string> seen;
    for (const auto& label : support_)
      if (!seen.insert(label).second) throw InvalidArgument("duplicate support label '" + label + "'");
    double total = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      const double m = mass_[i];
      if (!std::isfinite(m) || m < 0.0)
        throw InvalidArgument("mass of atom '" + support_[i] + "' must be finite and nonnegative");
      total += m;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw InvalidArgument("masses sum to " + std::to_string(total) + ", not 1");
    if (total != 1.0)
      for (double& m : mass_) m /= total;
  }

  // Atoms labelled "0", "1", ...
  static DiscreteDistribution from_masses(std::vector<double> mass) {
    auto labels = default_labels(mass.size());
    return DiscreteDistribution(std::move(labels), std::move(mass));
  }

  static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return labels;
  }

  std::size_t size() const noexcept { return mass_.size(); }
  const std::vector<std::string>& support() const noexcept { return support_; }
  const std::vector<double>& mass() const noexcept { return mass_; }
  double mass(std::size_t i) const { return mass_.at(i); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < support_.size(); ++i)
      if (support_[i] == label) return i;
    return std::nullopt;
  }

  // Mass of a label; 0 for labels outside the support.
  double mass_of(const std::string& label) const {
    const auto i = index_of(label);
    return i ? mass_[*i] : 0.0;
  }

 private:
  std::vector<std::string> support_;
  std::vector<double> mass_;
};

// Mass vectors of several distributions laid out over the union of their
// supports (first-seen label order).
struct AlignedMasses {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> masses;
};

inline AlignedMasses align(std::span<const DiscreteDistribution* const> dists) {
  AlignedMasses out;
  if (dists.empty()) return out;
  bool same = true;
  for (const auto* d : dists) same = same && d->support() == dists.front()->support();
  if (same) {
    out.labels = dists.front()->support();
    for (const auto* d : dists) out.masses.push_back(d->mass());
    return out;
  }
  std::unordered_map<std::string, std::size_t> index;
  for (const auto* d : dists)
    for (const auto& label : d->support())
      if (index.emplace(label, out.labels.size()).second) out.labels.push_back(label);
  for (const auto* d : dists) {
    std::vector<double> m(out.labels.size(), 0.0);
    for (std::size_t i = 0; i < d->size(); ++i) m[index.at(d->support()[i])] = d->mass()[i];
    out.masses.push_back(std::move(m));
  }
  return out;
}

inline AlignedMasses align(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const DiscreteDistribution* both[] = {&p, &q};
  return align(both);
}

// (1 - weight_on_q) P + weight_on_q Q over the union support.
inline DiscreteDistribution mixture(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                    double weight_on_q) {
  if (!(weight_on_q >= 0.0 && weight_on_q <= 1.0))
    throw InvalidArgument("mixture weight must lie in [0, 1]");
  auto a = align(p, q);
  std::vector<double> m(a.labels.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = (1.0 - weight_on_q) * a.masses[0][i] + weight_on_q * a.masses[1][i];
  return DiscreteDistribution(std::move(a.labels), std::move(m));
}

}  // namespace divkit
