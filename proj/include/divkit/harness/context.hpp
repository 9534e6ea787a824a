#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divkit/generator.hpp"
#include "divkit/harness/instances.hpp"
#include "divkit/report.hpp"

namespace divkit::harness {

// Everything a check body needs: its random stream, run settings and the
// report sink.
class CheckContext {
 public:
  CheckContext(std::string id, InstanceGenerator& gen, double tolerance, std::vector<CheckReport>& out)
      : id_(std::move(id)), gen_(gen), tolerance_(tolerance), out_(out) {}

  const std::string& id() const noexcept { return id_; }
  InstanceGenerator& gen() noexcept { return gen_; }
  std::size_t count() const noexcept { return gen_.config().count; }
  double tolerance() const noexcept { return tolerance_; }

  CheckReport at_least(std::string instance, double lhs, double rhs) const {
    return CheckReport::at_least(id_, std::move(instance), lhs, rhs, tolerance_);
  }
  CheckReport at_most(std::string instance, double lhs, double rhs) const {
    return CheckReport::at_most(id_, std::move(instance), lhs, rhs, tolerance_);
  }
  CheckReport identity(std::string instance, double lhs, double rhs, double tolerance) const {
    return CheckReport::identity(id_, std::move(instance), lhs, rhs, tolerance);
  }
  CheckReport skip(std::string instance, std::string reason, Verdict kind = Verdict::skipped) const {
    return CheckReport::skip(id_, std::move(instance), std::move(reason), kind);
  }

  void emit(CheckReport r) { out_.push_back(std::move(r)); }

 private:
  std::string id_;
  InstanceGenerator& gen_;
  double tolerance_;
  std::vector<CheckReport>& out_;
};

inline std::string tag(std::size_t index, std::size_t atoms, std::string_view extra = {}) {
  std::string s = "#" + std::to_string(index) + " atoms=" + std::to_string(atoms);
  if (!extra.empty()) {
    s += ' ';
    s += extra;
  }
  return s;
}

// Generators for which the table certifies strong convexity near 1.
inline std::vector<ConvexGenerator> strongly_convex_panel() {
  return {make_builtin(Builtin::kl),           make_builtin(Builtin::pearson_chi2),
          make_builtin(Builtin::squared_hellinger), make_builtin(Builtin::reverse_kl),
          make_builtin(Builtin::vincze_le_cam), make_builtin(Builtin::neyman_chi2)};
}

inline std::vector<ConvexGenerator> bayes_panel() {
  return {make_builtin(Builtin::kl), make_builtin(Builtin::pearson_chi2),
          make_builtin(Builtin::squared_hellinger), make_builtin(Builtin::jensen_shannon)};
}

// Every builtin, with representative parameters for the two families.
inline std::vector<ConvexGenerator> builtin_panel() {
  return {make_builtin(Builtin::kl),
          make_builtin(Builtin::total_variation),
          make_builtin(Builtin::pearson_chi2),
          make_builtin(Builtin::squared_hellinger),
          make_builtin(Builtin::reverse_kl),
          make_builtin(Builtin::vincze_le_cam),
          make_builtin(Builtin::jensen_shannon),
          make_builtin(Builtin::neyman_chi2),
          make_builtin(Builtin::sason_s, 1.0),
          make_builtin(Builtin::alpha_divergence, 0.5),
          make_builtin(Builtin::alpha_divergence, -3.0),
          make_builtin(Builtin::alpha_divergence, 3.5)};
}

}  // namespace divkit::harness
