#pragma once

// Convex generators f with f(1) = 0, their boundary limits, duality, affine
// normalization and kappa-convexity certificates.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divkit/errors.hpp"
#include "divkit/extended.hpp"

namespace divkit {

// An interval of (0, inf] with optionally closed finite endpoints.
struct Interval {
  double lo = 0.0;
  double hi = kInf;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval make(double lo, double hi, bool lo_closed, bool hi_closed) {
    return {lo, hi, lo_closed && std::isfinite(lo), hi_closed && std::isfinite(hi)};
  }
  static Interval open(double lo, double hi) { return make(lo, hi, false, false); }
  static Interval closed(double lo, double hi) { return make(lo, hi, true, true); }
  // (lo, hi]
  static Interval open_closed(double lo, double hi) { return make(lo, hi, false, true); }
  // [lo, hi)
  static Interval closed_open(double lo, double hi) { return make(lo, hi, true, false); }
  static Interval positive_reals() { return open(0.0, kInf); }

  bool empty() const noexcept {
    if (std::isnan(lo) || std::isnan(hi)) return true;
    if (lo < hi) return false;
    return !(lo == hi && lo_closed && hi_closed);
  }

  bool degenerate() const noexcept { return !empty() && lo == hi; }

  bool contains(double t) const noexcept {
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }

  bool contains(const Interval& o) const noexcept {
    if (o.empty()) return true;
    const bool lo_ok = o.lo > lo || (o.lo == lo && (lo_closed || !o.lo_closed));
    const bool hi_ok = o.hi < hi || (o.hi == hi && (hi_closed || !o.hi_closed));
    return lo_ok && hi_ok;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (lo_closed ? '[' : '(') << lo << ", ";
    if (std::isinf(hi)) {
      os << "inf";
    } else {
      os << hi;
    }
    os << (hi_closed ? ']' : ')');
    return os.str();
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Direction of f'' over the generator's domain.
enum class Trend { decreasing, increasing, constant };

struct Curvature {
  std::function<double(double)> second_derivative;
  Trend trend = Trend::decreasing;
};

enum class Builtin {
  kl,
  total_variation,
  pearson_chi2,
  squared_hellinger,
  reverse_kl,
  vincze_le_cam,
  jensen_shannon,
  neyman_chi2,
  sason_s,
  alpha_divergence,
};

inline constexpr Builtin kAllBuiltins[] = {
    Builtin::kl,           Builtin::total_variation, Builtin::pearson_chi2,
    Builtin::squared_hellinger, Builtin::reverse_kl, Builtin::vincze_le_cam,
    Builtin::jensen_shannon, Builtin::neyman_chi2, Builtin::sason_s,
    Builtin::alpha_divergence,
};

inline std::string_view builtin_name(Builtin b) {
  switch (b) {
    case Builtin::kl: return "kl";
    case Builtin::total_variation: return "total_variation";
    case Builtin::pearson_chi2: return "pearson_chi2";
    case Builtin::squared_hellinger: return "squared_hellinger";
    case Builtin::reverse_kl: return "reverse_kl";
    case Builtin::vincze_le_cam: return "vincze_le_cam";
    case Builtin::jensen_shannon: return "jensen_shannon";
    case Builtin::neyman_chi2: return "neyman_chi2";
    case Builtin::sason_s: return "sason_s";
    case Builtin::alpha_divergence: return "alpha_divergence";
  }
  return "unknown";
}

using Param = std::pair<std::string, double>;

class ConvexGenerator;
inline ConvexGenerator make_builtin(Builtin kind, std::optional<double> param = std::nullopt);

// A convex function on (a subinterval of) (0, inf) with f(1) = 0. Immutable;
// copies share the underlying callables.
class ConvexGenerator {
 public:
  using Fn = std::function<double(double)>;

  ConvexGenerator(std::string name, Fn eval, double f_at_zero, double f_star_at_zero,
                  Interval domain = Interval::positive_reals(),
                  std::optional<Curvature> curvature = std::nullopt,
                  std::vector<Param> params = {})
      : name_(std::move(name)),
        eval_(std::make_shared<const Fn>(std::move(eval))),
        f_at_zero_(f_at_zero),
        f_star_at_zero_(f_star_at_zero),
        domain_(domain),
        params_(std::move(params)) {
    if (!*eval_) throw InvalidArgument("generator '" + name_ + "' has no evaluation function");
    if (domain_.empty()) throw InvalidArgument("generator '" + name_ + "' has an empty domain");
    if (curvature) curvature_ = std::make_shared<const Curvature>(std::move(*curvature));
    if (domain_.contains(1.0) && (*eval_)(1.0) != 0.0) {
      throw InvalidArgument("generator '" + name_ + "' must satisfy f(1) = 0");
    }
  }

  const std::string& name() const noexcept { return name_; }

  // f(t) for t > 0; t == 0 yields the boundary limit f(0).
  double eval(double t) const {
    if (t == 0.0) return f_at_zero_;
    return (*eval_)(t);
  }
  double operator()(double t) const { return eval(t); }

  double f_at_zero() const noexcept { return f_at_zero_; }
  double f_star_at_zero() const noexcept { return f_star_at_zero_; }
  const Interval& domain() const noexcept { return domain_; }

  bool has_second_derivative() const noexcept { return curvature_ != nullptr; }
  const Curvature* curvature() const noexcept { return curvature_.get(); }
  double second_derivative(double t) const {
    if (!curvature_) throw InvalidArgument("generator '" + name_ + "' has no closed-form f''");
    return curvature_->second_derivative(t);
  }

  const std::vector<Param>& params() const noexcept { return params_; }
  std::optional<double> param(std::string_view key) const {
    for (const auto& [k, v] : params_)
      if (k == key) return v;
    return std::nullopt;
  }

  std::optional<Builtin> builtin() const noexcept { return builtin_; }

 private:
  friend ConvexGenerator make_builtin(Builtin, std::optional<double>);

  std::string name_;
  std::shared_ptr<const Fn> eval_;
  double f_at_zero_;
  double f_star_at_zero_;
  Interval domain_;
  std::shared_ptr<const Curvature> curvature_;
  std::vector<Param> params_;
  std::optional<Builtin> builtin_;
};

inline constexpr double kSasonMinimum = 0.22313016014842982;  // e^{-3/2}

inline std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// One of the ten tabulated generators. `param` is s for sason_s and alpha for
// alpha_divergence; it is ignored otherwise. All logarithms are natural.
inline ConvexGenerator make_builtin(Builtin kind, std::optional<double> param) {
  auto build = [kind](std::string name, ConvexGenerator::Fn f, double f0, double fs0,
                      Curvature c, std::vector<Param> params = {}) {
    ConvexGenerator g(std::move(name), std::move(f), f0, fs0, Interval::positive_reals(),
                      std::move(c), std::move(params));
    g.builtin_ = kind;
    return g;
  };

  switch (kind) {
    case Builtin::kl:
      return build(
          "kl", [](double t) { return t * std::log(t); }, 0.0, kInf,
          {[](double t) { return 1.0 / t; }, Trend::decreasing});
    case Builtin::total_variation:
      return build(
          "total_variation", [](double t) { return std::abs(t - 1.0) / 2.0; }, 0.5, 0.5,
          {[](double) { return 0.0; }, Trend::constant});
    case Builtin::pearson_chi2:
      return build(
          "pearson_chi2", [](double t) { return (t - 1.0) * (t - 1.0); }, 1.0, kInf,
          {[](double) { return 2.0; }, Trend::constant});
    case Builtin::squared_hellinger:
      return build(
          "squared_hellinger", [](double t) { return 2.0 * (1.0 - std::sqrt(t)); }, 2.0, 0.0,
          {[](double t) { return 0.5 * std::pow(t, -1.5); }, Trend::decreasing});
    case Builtin::reverse_kl:
      return build(
          "reverse_kl", [](double t) { return -std::log(t); }, kInf, 0.0,
          {[](double t) { return 1.0 / (t * t); }, Trend::decreasing});
    case Builtin::vincze_le_cam:
      return build(
          "vincze_le_cam", [](double t) { return (t - 1.0) * (t - 1.0) / (t + 1.0); }, 1.0, 1.0,
          {[](double t) { return 8.0 / ((t + 1.0) * (t + 1.0) * (t + 1.0)); },
           Trend::decreasing});
    case Builtin::jensen_shannon:
      // (t+1) ln(2/(t+1)) + t ln t, regrouped to avoid cancellation at large t.
      return build(
          "jensen_shannon",
          [](double t) { return t * std::log(2.0 * t / (t + 1.0)) + std::log(2.0 / (t + 1.0)); },
          std::log(2.0), std::log(2.0),
          {[](double t) { return 1.0 / (t * (t + 1.0)); }, Trend::decreasing});
    case Builtin::neyman_chi2:
      return build(
          "neyman_chi2", [](double t) { return 1.0 / t - 1.0; }, kInf, 0.0,
          {[](double t) { return 2.0 / (t * t * t); }, Trend::decreasing});
    case Builtin::sason_s: {
      const double s = param.value_or(1.0);
      if (!(s > kSasonMinimum))
        throw InvalidArgument("sason_s requires s > e^{-3/2}, got " + format_param(s));
      const double anchor = (s + 1.0) * (s + 1.0) * std::log(s + 1.0);
      return build(
          "sason_s:" + format_param(s),
          [s, anchor](double t) { return (s + t) * (s + t) * std::log(s + t) - anchor; },
          s * s * std::log(s) - anchor, kInf,
          {[s](double t) { return 2.0 * std::log(s + t) + 3.0; }, Trend::increasing},
          {{"s", s}});
    }
    case Builtin::alpha_divergence: {
      const double a = param.value_or(0.0);
      if (!std::isfinite(a) || a == 1.0 || a == -1.0)
        throw InvalidArgument("alpha_divergence requires alpha not in {-1, +1}, got " +
                              format_param(a));
      const double exponent = (1.0 + a) / 2.0;
      const double scale = 4.0 / (1.0 - a * a);
      const double f0 = exponent > 0.0 ? scale : kInf;
      const double fs0 = exponent > 1.0 ? kInf : 0.0;
      const Trend trend = a < 3.0 ? Trend::decreasing : (a > 3.0 ? Trend::increasing : Trend::constant);
      const double curv_exp = (a - 3.0) / 2.0;
      return build(
          "alpha_divergence:" + format_param(a),
          [exponent, scale](double t) { return scale * (1.0 - std::pow(t, exponent)); }, f0, fs0,
          {[curv_exp](double t) { return std::pow(t, curv_exp); }, trend}, {{"alpha", a}});
    }
  }
  throw InvalidArgument("unknown builtin");
}

inline std::optional<Builtin> builtin_from_name(std::string_view name) {
  struct Alias {
    std::string_view name;
    Builtin kind;
  };
  static constexpr Alias aliases[] = {
      {"kl", Builtin::kl},
      {"relative_entropy", Builtin::kl},
      {"total_variation", Builtin::total_variation},
      {"tv", Builtin::total_variation},
      {"pearson_chi2", Builtin::pearson_chi2},
      {"chi2", Builtin::pearson_chi2},
      {"squared_hellinger", Builtin::squared_hellinger},
      {"hellinger", Builtin::squared_hellinger},
      {"reverse_kl", Builtin::reverse_kl},
      {"vincze_le_cam", Builtin::vincze_le_cam},
      {"triangular", Builtin::vincze_le_cam},
      {"jensen_shannon", Builtin::jensen_shannon},
      {"js", Builtin::jensen_shannon},
      {"neyman_chi2", Builtin::neyman_chi2},
      {"sason_s", Builtin::sason_s},
      {"sason", Builtin::sason_s},
      {"alpha_divergence", Builtin::alpha_divergence},
      {"alpha", Builtin::alpha_divergence},
  };
  for (const auto& a : aliases)
    if (a.name == name) return a.kind;
  return std::nullopt;
}

// Builds a generator from a name with an optional ":param" suffix, as in
// "kl", "alpha:0.5" or "sason:1.0".
inline ConvexGenerator make_builtin(std::string_view spec) {
  std::string_view name = spec;
  std::optional<double> param;
  if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    const std::string value(spec.substr(colon + 1));
    try {
      std::size_t used = 0;
      param = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw InvalidArgument("bad parameter '" + value + "' for divergence '" + std::string(name) + "'");
    }
  }
  const auto kind = builtin_from_name(name);
  if (!kind) throw InvalidArgument("unknown divergence '" + std::string(name) + "'");
  if (param && *kind != Builtin::sason_s && *kind != Builtin::alpha_divergence)
    throw InvalidArgument("divergence '" + std::string(name) + "' takes no parameter");
  return make_builtin(*kind, param);
}

// --- table of kappa(M) values ---------------------------------------------

struct TableRow {
  Interval interval;
  double kappa = 0.0;
};

// The tabulated certificate interval and kappa(M) for a builtin generator.
inline TableRow table_row(const ConvexGenerator& g, double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw InvalidArgument("table M must be positive and finite");
  const auto kind = g.builtin();
  if (!kind) throw InvalidArgument("generator '" + g.name() + "' is not tabulated");
  const auto upto = Interval::open_closed(0.0, M);
  const auto from = Interval::closed_open(M, kInf);
  switch (*kind) {
    case Builtin::kl: return {upto, 1.0 / M};
    case Builtin::total_variation: return {Interval::positive_reals(), 0.0};
    case Builtin::pearson_chi2: return {Interval::positive_reals(), 2.0};
    case Builtin::squared_hellinger: return {upto, std::pow(M, -1.5) / 2.0};
    case Builtin::reverse_kl: return {upto, 1.0 / (M * M)};
    case Builtin::vincze_le_cam: return {upto, 8.0 / ((M + 1.0) * (M + 1.0) * (M + 1.0))};
    case Builtin::jensen_shannon: return {upto, 1.0 / (M * (M + 1.0))};
    case Builtin::neyman_chi2: return {upto, 2.0 / (M * M * M)};
    case Builtin::sason_s: return {from, 2.0 * std::log(*g.param("s") + M) + 3.0};
    case Builtin::alpha_divergence: {
      const double a = *g.param("alpha");
      return {a > 3.0 ? from : upto, std::pow(M, (a - 3.0) / 2.0)};
    }
  }
  throw InvalidArgument("unknown builtin");
}

// --- kappa certificates -----------------------------------------------------

enum class CertificateMethod { closed_form, finite_difference };

inline std::string_view method_name(CertificateMethod m) {
  return m == CertificateMethod::closed_form ? "closed_form" : "finite_difference";
}

struct KappaCertificate {
  Interval interval;
  double kappa = 0.0;
  CertificateMethod method = CertificateMethod::closed_form;
};

namespace detail {

inline constexpr double kGridFloor = 1e-6;
inline constexpr double kGridCeiling = 1e6;
inline constexpr std::size_t kGridPoints = 1024;
inline constexpr double kNumericMargin = 1e-6;

}  // namespace detail

// Log-spaced evaluation grid over the interval clipped to [1e-6, 1e6].
inline std::vector<double> certificate_grid(const Interval& iv,
                                            std::size_t points = detail::kGridPoints) {
  double lo = std::max(iv.lo, detail::kGridFloor);
  double hi = std::min(iv.hi, detail::kGridCeiling);
  if (lo > hi) {
    // Interval lies entirely outside the clip window; use it as is.
    lo = iv.lo > 0.0 ? iv.lo : iv.hi * 1e-6;
    hi = std::isfinite(iv.hi) ? iv.hi : iv.lo * 1e6;
  }
  if (lo == hi || points < 2) return {lo};
  std::vector<double> grid(points);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

struct SecondDifference {
  double value = 0.0;
  // Bound on the floating-point error of value from cancellation in the
  // three evaluations and rounding of t +- h.
  double noise = 0.0;
};

// Central second difference with h = 1e-4 max(1, t), shrunk so that t +- h
// stays strictly inside the generator's domain. Empty if t sits on the
// domain boundary.
inline std::optional<SecondDifference> second_difference(const ConvexGenerator& g, double t) {
  double h = 1e-4 * std::max(1.0, t);
  const auto& dom = g.domain();
  h = std::min(h, (t - dom.lo) / 2.0);
  if (std::isfinite(dom.hi)) h = std::min(h, (dom.hi - t) / 2.0);
  if (!(h > 0.0)) return std::nullopt;
  const double up = g.eval(t + h);
  const double mid = g.eval(t);
  const double down = g.eval(t - h);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double slope = std::abs(up - down) / (2.0 * h);
  SecondDifference d;
  d.value = (up - 2.0 * mid + down) / (h * h);
  d.noise = 8.0 * eps * (std::abs(up) + 2.0 * std::abs(mid) + std::abs(down) + 2.0 * (t + h) * slope) / (h * h);
  return d;
}

// Largest kappa for which g is kappa-convex on the interval: the infimum of
// the closed-form f'' at its minimizing endpoint when available, otherwise
// the grid minimum of central second differences less a 1e-6 margin.
inline KappaCertificate kappa_on(const ConvexGenerator& g, const Interval& iv) {
  if (iv.empty()) throw DomainError("kappa_on: empty interval " + iv.to_string());
  if (!g.domain().contains(iv))
    throw DomainError("kappa_on: interval " + iv.to_string() + " outside domain " +
                      g.domain().to_string() + " of " + g.name());

  if (const Curvature* c = g.curvature()) {
    double k = 0.0;
    switch (c->trend) {
      case Trend::decreasing: k = c->second_derivative(iv.hi); break;
      case Trend::increasing: k = c->second_derivative(iv.lo); break;
      case Trend::constant: k = c->second_derivative(iv.degenerate() ? iv.lo : 1.0); break;
    }
    if (std::isnan(k)) k = 0.0;
    return {iv, std::max(0.0, k), CertificateMethod::closed_form};
  }

  double lowest = kInf;
  for (double t : certificate_grid(iv)) {
    if (!iv.contains(t) && !iv.degenerate()) continue;
    if (const auto d = second_difference(g, t)) lowest = std::min(lowest, d->value - d->noise);
  }
  if (!std::isfinite(lowest)) lowest = detail::kNumericMargin;
  return {iv, std::max(0.0, lowest - detail::kNumericMargin), CertificateMethod::finite_difference};
}

struct CertificateCheck {
  bool passed = true;
  double worst_margin = kInf;  // min over grid of (second difference - threshold)
  double worst_t = kNaN;
  std::size_t points = 0;
};

// Finite-difference audit of a certificate: every grid second difference
// must reach kappa - 1e-6 max(1, kappa), up to its rounding noise.
inline CertificateCheck verify_certificate(const ConvexGenerator& g, const KappaCertificate& cert) {
  CertificateCheck out;
  const double threshold = cert.kappa - 1e-6 * std::max(1.0, cert.kappa);
  for (double t : certificate_grid(cert.interval)) {
    const auto d = second_difference(g, t);
    if (!d) continue;
    ++out.points;
    const double margin = d->value + d->noise - threshold;
    if (!(margin >= out.worst_margin)) {
      out.worst_margin = margin;
      out.worst_t = t;
    }
  }
  out.passed = out.points > 0 && out.worst_margin >= 0.0;
  return out;
}

// --- derived generators -----------------------------------------------------

// f*(t) = t f(1/t); swaps the arguments of the divergence.
inline ConvexGenerator dual(const ConvexGenerator& g) {
  const auto& d = g.domain();
  const Interval dom = Interval::make(d.hi == kInf ? 0.0 : 1.0 / d.hi,
                                      d.lo == 0.0 ? kInf : 1.0 / d.lo, d.hi_closed, d.lo_closed);
  std::vector<Param> params = g.params();
  return ConvexGenerator(
      "dual(" + g.name() + ")", [g](double t) { return t * g.eval(1.0 / t); }, g.f_star_at_zero(),
      g.f_at_zero(), dom, std::nullopt, std::move(params));
}

// f(t) + c (t - 1); defines the same divergence as f.
inline ConvexGenerator affine_shift(const ConvexGenerator& g, double c) {
  std::optional<Curvature> curv;
  if (const Curvature* k = g.curvature()) curv = *k;
  std::vector<Param> params = g.params();
  params.emplace_back("shift", c);
  return ConvexGenerator(
      "shift(" + g.name() + "," + format_param(c) + ")",
      [g, c](double t) { return g.eval(t) + c * (t - 1.0); }, g.f_at_zero() - c,
      g.f_star_at_zero() + c, g.domain(), std::move(curv), std::move(params));
}

// f'(1) by central difference; used to put a generator in the normal form
// f'(1) = 0.
inline double derivative_at_one(const ConvexGenerator& g, double h = 1e-6) {
  return (g.eval(1.0 + h) - g.eval(1.0 - h)) / (2.0 * h);
}

inline ConvexGenerator normalized(const ConvexGenerator& g) {
  return affine_shift(g, -derivative_at_one(g));
}

}  // namespace divkit
