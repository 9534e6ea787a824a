#pragma once

// Deterministic random instances for the check registry. Every check draws
// from its own stream, seeded from the run seed and the check id, so adding
// or selecting checks never perturbs the instances another check sees.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divkit/errors.hpp"

namespace divkit::harness {

struct InstanceConfig {
  std::uint64_t seed = 42;
  std::vector<std::size_t> support_sizes{2, 4, 8, 16};
  std::vector<std::size_t> n_hypotheses{2, 3, 4};
  double mass_floor = 0.0;  // atom weights ~ uniform(mass_floor, 1) before normalizing
  std::size_t count = 200;  // instances per check
  double zero_probability = 0.2;  // chance that a distribution gets zeroed atoms

  void validate() const {
    if (support_sizes.empty()) throw InvalidArgument("support_sizes is empty");
    for (auto s : support_sizes)
      if (s < 2) throw InvalidArgument("support sizes must be at least 2");
    if (n_hypotheses.empty()) throw InvalidArgument("n_hypotheses is empty");
    for (auto n : n_hypotheses)
      if (n < 2) throw InvalidArgument("hypothesis counts must be at least 2");
    if (!(mass_floor >= 0.0 && mass_floor < 1.0)) throw InvalidArgument("mass_floor must lie in [0, 1)");
    if (!(zero_probability >= 0.0 && zero_probability <= 1.0))
      throw InvalidArgument("zero_probability must lie in [0, 1]");
  }
};

// Which members of a pair may carry zero atoms.
enum class Zeros { none, first_only, any };

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class InstanceGenerator {
 public:
  InstanceGenerator(InstanceConfig config, std::string_view stream) : config_(std::move(config)) {
    config_.validate();
    const std::uint64_t h = fnv1a(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    rng_.seed(seq);
  }

  const InstanceConfig& config() const noexcept { return config_; }

  // Uniform on [0, 1) from the top 53 bits; identical on every platform.
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  std::size_t support_size() { return pick(config_.support_sizes); }
  std::size_t hypothesis_count() { return pick(config_.n_hypotheses); }

  // Strictly positive weights summing to 1.
  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (double& x : w) x = uniform(0.05, 1.0);
    normalize(w);
    return w;
  }

  std::vector<double> distribution(std::size_t atoms, bool allow_zeros) {
    std::vector<double> m(atoms);
    for (double& x : m) {
      x = uniform(config_.mass_floor, 1.0);
      if (x == 0.0) x = 0x1.0p-53;
    }
    if (allow_zeros && atoms > 1 && bernoulli(config_.zero_probability)) {
      std::vector<std::size_t> order(atoms);
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = atoms - 1; i > 0; --i) std::swap(order[i], order[index(i + 1)]);
      const std::size_t zeros = 1 + index(atoms - 1);
      for (std::size_t i = 0; i < zeros; ++i) m[order[i]] = 0.0;
    }
    normalize(m);
    return m;
  }

  std::pair<std::vector<double>, std::vector<double>> pair(std::size_t atoms, Zeros zeros) {
    auto p = distribution(atoms, zeros != Zeros::none);
    auto q = distribution(atoms, zeros == Zeros::any);
    return {std::move(p), std::move(q)};
  }

  // Partition of {0, ..., atoms-1} into between 1 and atoms groups.
  std::vector<std::vector<std::size_t>> partition(std::size_t atoms) {
    const std::size_t groups = 1 + index(atoms);
    std::vector<std::vector<std::size_t>> out(groups);
    for (std::size_t i = 0; i < atoms; ++i) out[i < groups ? i : index(groups)].push_back(i);
    return out;
  }

 private:
  static void normalize(std::vector<double>& v) {
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= s;
  }

  InstanceConfig config_;
  std::mt19937_64 rng_;
};

}  // namespace divkit::harness
