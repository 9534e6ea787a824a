#pragma once

// Extended-real helpers. +inf is an ordinary value of type double here; the
// only places where 0 * inf is read as 0 are the three boundary conventions
// of an f-divergence, all funnelled through `perspective`.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace divkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Divergence values smaller than this in magnitude are reported as 0.
inline constexpr double kZeroClamp = 1e-15;

inline double clamp_tiny(double v) noexcept {
  return std::abs(v) < kZeroClamp ? 0.0 : v;
}

inline bool is_pos_inf(double v) noexcept { return std::isinf(v) && v > 0; }

// weight * limit where a zero weight annihilates an infinite limit.
inline double weighted_limit(double weight, double limit) noexcept {
  return weight == 0.0 ? 0.0 : weight * limit;
}

// Relative closeness: |a - b| <= tol * max(1, |a|, |b|). Two equal infinities
// are close; an infinity is never close to a finite value.
inline bool close_rel(double a, double b, double tol) noexcept {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

inline std::string format_extended(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::to_string(v);
}

// The perspective den * f(num / den) of a generator on [0, inf)^2, applying
// the conventions f(0) = lim_{t->0+} f(t), 0 f(0/0) = 0 and
// 0 f(a/0) = a * lim_{t->inf} f(t)/t.
template <typename Generator>
double perspective(const Generator& g, double num, double den) {
  if (den > 0.0) {
    if (num == 0.0) return weighted_limit(den, g.f_at_zero());
    return den * g.eval(num / den);
  }
  if (num == 0.0) return 0.0;
  return weighted_limit(num, g.f_star_at_zero());
}

}  // namespace divkit
