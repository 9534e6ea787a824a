#pragma once

// Verdicts for a single inequality or identity evaluated on one instance.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divkit/extended.hpp"

namespace divkit {

enum class Verdict { pass, fail, skipped, degenerate };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
    case Verdict::degenerate: return "degenerate";
  }
  return "fail";
}

inline constexpr double kDefaultTolerance = 1e-10;

struct CheckReport {
  std::string check_id;
  std::string instance;
  double lhs = kNaN;
  double rhs = kNaN;
  double margin = kNaN;
  double tolerance = kDefaultTolerance;
  Verdict verdict = Verdict::fail;
  std::string reason;
  // Monitored side quantities (alternative constants, kappa, W terms, ...).
  std::vector<std::pair<std::string, double>> aux;

  bool passed() const noexcept { return verdict == Verdict::pass; }
  bool failed() const noexcept { return verdict == Verdict::fail; }

  CheckReport& note(std::string key, double value) {
    aux.emplace_back(std::move(key), value);
    return *this;
  }

  std::optional<double> aux_value(std::string_view key) const {
    for (const auto& [k, v] : aux)
      if (k == key) return v;
    return std::nullopt;
  }

  // Claim lhs >= rhs; margin = lhs - rhs.
  static CheckReport at_least(std::string id, std::string instance, double lhs, double rhs,
                              double tolerance = kDefaultTolerance) {
    CheckReport r = base(std::move(id), std::move(instance), lhs, rhs, tolerance);
    if (std::isnan(lhs) || std::isnan(rhs)) return r.fail_nan();
    if (is_pos_inf(lhs)) {
      r.margin = kInf;
      r.verdict = Verdict::pass;
      r.reason = "infinite left-hand side";
      return r;
    }
    r.margin = lhs - rhs;
    return r.decide();
  }

  // Claim lhs <= rhs; margin = rhs - lhs.
  static CheckReport at_most(std::string id, std::string instance, double lhs, double rhs,
                             double tolerance = kDefaultTolerance) {
    CheckReport r = base(std::move(id), std::move(instance), lhs, rhs, tolerance);
    if (std::isnan(lhs) || std::isnan(rhs)) return r.fail_nan();
    if (is_pos_inf(rhs)) {
      r.margin = kInf;
      r.verdict = Verdict::pass;
      r.reason = "infinite right-hand side";
      return r;
    }
    r.margin = rhs - lhs;
    return r.decide();
  }

  // Claim lhs == rhs; margin = -|lhs - rhs| / max(1, |lhs|, |rhs|).
  static CheckReport identity(std::string id, std::string instance, double lhs, double rhs,
                              double tolerance) {
    CheckReport r = base(std::move(id), std::move(instance), lhs, rhs, tolerance);
    if (std::isnan(lhs) || std::isnan(rhs)) return r.fail_nan();
    if (std::isinf(lhs) || std::isinf(rhs)) {
      r.margin = lhs == rhs ? 0.0 : -kInf;
    } else {
      r.margin = -std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    }
    return r.decide();
  }

  static CheckReport skip(std::string id, std::string instance, std::string reason,
                          Verdict kind = Verdict::skipped) {
    CheckReport r;
    r.check_id = std::move(id);
    r.instance = std::move(instance);
    r.verdict = kind;
    r.reason = std::move(reason);
    return r;
  }

 private:
  static CheckReport base(std::string id, std::string instance, double lhs, double rhs,
                          double tolerance) {
    CheckReport r;
    r.check_id = std::move(id);
    r.instance = std::move(instance);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tolerance;
    return r;
  }

  CheckReport& fail_nan() {
    margin = kNaN;
    verdict = Verdict::fail;
    reason = "nan encountered";
    return *this;
  }

  CheckReport& decide() {
    if (std::isnan(margin)) return fail_nan();
    verdict = margin >= -tolerance ? Verdict::pass : Verdict::fail;
    return *this;
  }
};

}  // namespace divkit
