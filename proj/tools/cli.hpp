#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divkit/bayes.hpp"
#include "divkit/divergence.hpp"
#include "divkit/errors.hpp"
#include "divkit/generator.hpp"
#include "divkit/harness/registry.hpp"
#include "divkit/io.hpp"
#include "divkit/skewing.hpp"

namespace divkit::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

namespace detail {

inline std::string num(double v) {
  if (!std::isfinite(v)) return format_extended(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline double parse_real(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(field, "'" + text + "' is not a number");
}

inline std::vector<ConvexGenerator> generators(const std::vector<std::string>& names) {
  std::vector<ConvexGenerator> out;
  for (const auto& list : names)
    for (const auto& n : split(list, ',')) out.push_back(make_builtin(n));
  return out;
}

struct Skew {
  double t, s;
};

inline Skew parse_skew(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InputError("--skew", "expected 't,s', got '" + text + "'");
  return {parse_real(parts[0], "--skew"), parse_real(parts[1], "--skew")};
}

// "alphas=0,0.5,1 weights=0.2,0.3,0.5", given as one or two tokens.
inline SkewScheme parse_scheme(const std::vector<std::string>& tokens) {
  std::optional<std::vector<double>> alphas, weights;
  for (const auto& token : tokens) {
    for (const auto& item : split(token, ' ')) {
      const auto eq = item.find('=');
      const std::string key = item.substr(0, eq);
      if (eq == std::string::npos || (key != "alphas" && key != "weights"))
        throw InputError("--scheme", "expected 'alphas=...' or 'weights=...', got '" + item + "'");
      std::vector<double> values;
      for (const auto& v : split(item.substr(eq + 1), ',')) values.push_back(parse_real(v, "--scheme " + key));
      (key == "alphas" ? alphas : weights) = std::move(values);
    }
  }
  if (!alphas) throw InputError("--scheme", "missing alphas=");
  if (!weights) throw InputError("--scheme", "missing weights=");
  try {
    return SkewScheme(std::move(*alphas), std::move(*weights));
  } catch (const InvalidArgument& e) {
    throw InputError("--scheme", e.what());
  }
}

inline void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// --- compute ------------------------------------------------------------------

struct ComputeOptions {
  std::string p_path, q_path;
  std::vector<std::string> divergences{"kl,total_variation,pearson_chi2,squared_hellinger"};
  std::vector<std::string> skews;
  std::vector<std::vector<std::string>> schemes;
  bool symmetrize = false;
  bool json = false;
};

inline int run_compute(const ComputeOptions& o, std::ostream& out) {
  const auto p = load_distribution(o.p_path);
  const auto q = load_distribution(o.q_path);
  const auto gens = generators(o.divergences);
  std::vector<Skew> skews;
  for (const auto& s : o.skews) skews.push_back(parse_skew(s));
  std::vector<SkewScheme> schemes;
  for (const auto& s : o.schemes) schemes.push_back(parse_scheme(s));

  Json rows = Json::array();
  Table table({"divergence", "variant", "value"});
  auto add = [&](const ConvexGenerator& g, const std::string& variant, double value, Json extra) {
    Json row{{"divergence", g.name()}, {"variant", variant}, {"value", encode_real(value)}};
    row.update(extra);
    rows.push_back(std::move(row));
    table.add({g.name(), variant, num(value)});
  };
  for (const auto& g : gens) {
    add(g, "plain", f_divergence(g, p, q).value, Json::object());
    for (const auto& sk : skews)
      add(g, "skew t=" + format_param(sk.t) + " s=" + format_param(sk.s), skew_divergence(g, p, q, sk.t, sk.s),
          Json{{"t", sk.t}, {"s", sk.s}});
    for (std::size_t i = 0; i < schemes.size(); ++i)
      add(g, "scheme " + std::to_string(i), generalized_skew_divergence(g, p, q, schemes[i]),
          Json{{"alphas", schemes[i].alphas()}, {"weights", schemes[i].weights()}});
    if (o.symmetrize) add(g, "symmetrized", symmetrized_divergence(g, p, q), Json::object());
  }
  const double tv = total_variation(p, q);
  if (o.json) {
    write_json(out, Json{{"p", to_json(p)}, {"q", to_json(q)}, {"total_variation", encode_real(tv)}, {"rows", rows}});
  } else {
    table.print(out);
  }
  return kPass;
}

// --- check --------------------------------------------------------------------

struct CheckOptions {
  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::string support_sizes = "2,4,8,16";
  std::string hypotheses = "2,3,4";
  double mass_floor = 0.0;
  double zero_probability = 0.2;
  std::vector<std::string> checks;
  double tolerance = kDefaultTolerance;
  std::size_t threads = 1;
  bool json = false;
  bool list = false;
  bool verbose = false;
};

inline std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& field) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) {
    const double v = parse_real(item, field);
    if (!(v >= 0.0) || v != std::floor(v)) throw InputError(field, "'" + item + "' is not a whole number");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

inline Json config_json(const harness::RunConfig& c) {
  return Json{{"seed", c.instances.seed},
              {"count", c.instances.count},
              {"support_sizes", c.instances.support_sizes},
              {"n_hypotheses", c.instances.n_hypotheses},
              {"mass_floor", c.instances.mass_floor},
              {"zero_probability", c.instances.zero_probability},
              {"tolerance", c.tolerance}};
}

inline int run_check(const CheckOptions& o, std::ostream& out) {
  if (o.list) {
    Table t({"check", "summary"});
    for (const auto& c : harness::registry()) t.add({c.id, c.summary});
    t.print(out);
    return kPass;
  }
  harness::RunConfig cfg;
  cfg.instances.seed = o.seed;
  cfg.instances.count = o.count;
  cfg.instances.support_sizes = parse_sizes(o.support_sizes, "--support-sizes");
  cfg.instances.n_hypotheses = parse_sizes(o.hypotheses, "--hypotheses");
  cfg.instances.mass_floor = o.mass_floor;
  cfg.instances.zero_probability = o.zero_probability;
  cfg.tolerance = o.tolerance;
  cfg.threads = o.threads;
  for (const auto& list : o.checks)
    for (const auto& id : split(list, ',')) cfg.checks.push_back(id);
  for (const auto& id : cfg.checks) {
    try {
      harness::find_check(id);
    } catch (const InvalidArgument& e) {
      throw InputError("--checks", e.what());
    }
  }
  try {
    cfg.instances.validate();
  } catch (const InvalidArgument& e) {
    throw InputError("config", e.what());
  }

  const auto reports = harness::run_registry(cfg);
  const auto summary = harness::summarize(reports);

  std::vector<std::string> order;
  for (const auto& r : reports)
    if (std::find(order.begin(), order.end(), r.check_id) == order.end()) order.push_back(r.check_id);

  if (o.json) {
    Json checks = Json::array();
    for (const auto& id : order) {
      const auto& spec = harness::find_check(id);
      std::vector<CheckReport> mine;
      for (const auto& r : reports)
        if (r.check_id == id) mine.push_back(r);
      const auto s = harness::summarize(mine);
      checks.push_back(Json{{"check", id},
                            {"summary", spec.summary},
                            {"pass", s.passed},
                            {"fail", s.failed},
                            {"skipped", s.skipped},
                            {"degenerate", s.degenerate}});
    }
    Json rs = Json::array();
    for (const auto& r : reports) rs.push_back(to_json(r));
    write_json(out, Json{{"config", config_json(cfg)},
                         {"summary",
                          {{"total", summary.total()},
                           {"pass", summary.passed},
                           {"fail", summary.failed},
                           {"skipped", summary.skipped},
                           {"degenerate", summary.degenerate}}},
                         {"checks", checks},
                         {"reports", rs}});
  } else {
    Table t({"check", "pass", "fail", "skipped", "degenerate", "worst margin"});
    for (const auto& id : order) {
      std::vector<CheckReport> mine;
      double worst = kInf;
      for (const auto& r : reports)
        if (r.check_id == id) {
          mine.push_back(r);
          if (r.verdict == Verdict::pass || r.verdict == Verdict::fail) worst = std::min(worst, r.margin);
        }
      const auto s = harness::summarize(mine);
      t.add({id, std::to_string(s.passed), std::to_string(s.failed), std::to_string(s.skipped),
             std::to_string(s.degenerate), num(worst)});
    }
    t.print(out);
    std::size_t shown = 0;
    for (const auto& r : reports) {
      if (!r.failed() || (!o.verbose && shown >= 20)) continue;
      if (shown++ == 0) out << "\nfailures:\n";
      out << "  " << r.check_id << " [" << r.instance << "] lhs=" << num(r.lhs) << " rhs=" << num(r.rhs)
          << " margin=" << num(r.margin) << (r.reason.empty() ? "" : " (" + r.reason + ")") << '\n';
    }
    if (!o.verbose && summary.failed > shown) out << "  ... " << summary.failed - shown << " more\n";
    out << "\ntotal " << summary.total() << ": " << summary.passed << " pass, " << summary.failed << " fail, "
        << summary.skipped << " skipped, " << summary.degenerate << " degenerate\n";
  }
  return summary.ok() ? kPass : kFail;
}

// --- bayes --------------------------------------------------------------------

struct BayesOptions {
  std::string problem_path;
  std::vector<std::string> divergences{"kl,pearson_chi2,squared_hellinger,jensen_shannon"};
  double tolerance = kDefaultTolerance;
  bool json = false;
};

inline Json optional_masses(const std::optional<std::vector<double>>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline int run_bayes(const BayesOptions& o, std::ostream& out) {
  const auto file = load_problem(o.problem_path);
  const auto& prob = file.problem;
  const auto gens = generators(o.divergences);
  const auto d = decompose(prob, file.reference);
  const auto w = w_terms(prob, file.reference);
  std::vector<CheckReport> reports;
  for (const auto& g : gens) 
    reports.push_back(guntuboyina_bound(prob, file.reference, g, o.tolerance, "guntuboyina_bound", g.name()));
  reports.push_back(compensation_identity_check(prob, file.reference, o.tolerance, "compensation_identity", "kl"));

  bool ok = true;
  for (const auto& r : reports) ok = ok && !r.failed();

  std::vector<std::string> estimator;
  for (std::size_t x = 0; x < d.estimator.size(); ++x) estimator.push_back(std::to_string(d.estimator[x]));

  if (o.json) {
    Json rs = Json::array();
    for (const auto& r : reports) rs.push_back(to_json(r));
    write_json(out, Json{{"support", prob.labels()},
                         {"prior", prob.prior()},
                         {"reference", file.reference_given ? "q" : "barycenter"},
                         {"q", file.reference},
                         {"estimator", d.estimator},
                         {"risk", encode_real(d.risk)},
                         {"q_mass", encode_real(d.q_mass)},
                         {"q1", optional_masses(d.q1)},
                         {"q2", optional_masses(d.q2)},
                         {"rho1", optional_masses(d.rho1)},
                         {"rho2", optional_masses(d.rho2)},
                         {"w", {{"w0", encode_real(w.w0)},
                                {"w1", encode_real(w.w1)},
                                {"w2", encode_real(w.w2)},
                                {"total", encode_real(w.w_total)}}},
                         {"reports", rs}});
  } else {
    out << "hypotheses " << prob.size() << ", atoms " << prob.support_size() << ", reference "
        << (file.reference_given ? "q" : "barycenter") << '\n';
    Table t({"atom", "estimate", "q"});
    for (std::size_t x = 0; x < prob.support_size(); ++x)
      t.add({prob.labels()[x], estimator[x], num(file.reference[x])});
    t.print(out);
    out << "bayes risk R = " << num(d.risk) << ", Q(error) = " << num(d.q_mass) << '\n';
    out << "W0 = " << num(w.w0) << ", W1 = " << num(w.w1) << ", W2 = " << num(w.w2) << ", W = " << num(w.w_total)
        << (d.degenerate() ? " (degenerate decomposition)" : "") << "\n\n";
    Table b({"check", "instance", "lhs", "rhs", "margin", "verdict"});
    for (const auto& r : reports)
      b.add({r.check_id, r.instance, num(r.lhs), num(r.rhs), num(r.margin), std::string(verdict_name(r.verdict))});
    b.print(out);
  }
  return ok ? kPass : kFail;
}

// --- series -------------------------------------------------------------------

struct SeriesOptions {
  std::string p_path, q_path;
  std::size_t max_terms = 60;
  double tolerance = kDefaultTolerance;
  bool json = false;
};

inline int run_series(const SeriesOptions& o, std::ostream& out) {
  const auto p1 = load_distribution(o.p_path);
  const auto p2 = load_distribution(o.q_path);
  const auto s = pinsker_series(p1, p2, o.max_terms);
  const std::string inst = o.p_path + " || " + o.q_path;
  const double last = s.partial_sums.empty() ? 0.0 : s.partial_sums.back();
  std::vector<CheckReport> reports;
  if (s.diverges) {
    reports.push_back(CheckReport::skip("sharpened_pinsker", inst, "relative entropy is infinite"));
  } else {
    reports.push_back(CheckReport::identity("series", inst, last, s.kl, 1e-9));
    reports.push_back(CheckReport::at_least("sharpened_pinsker", inst, s.kl, s.sharpened_bound(), o.tolerance));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && !r.failed();

  if (o.json) {
    Json terms = Json::array();
    for (std::size_t k = 0; k < s.partial_sums.size(); ++k) {
      Json t{{"k", k}, {"partial_sum", encode_real(s.partial_sums[k])}};
      if (k < s.lower_bound_terms.size()) t["lower_bound_term"] = encode_real(s.lower_bound_terms[k]);
      if (k < s.weighted_lower_bound_terms.size())
        t["weighted_lower_bound_term"] = encode_real(s.weighted_lower_bound_terms[k]);
      terms.push_back(std::move(t));
    }
    Json rs = Json::array();
    for (const auto& r : reports) rs.push_back(to_json(r));
    write_json(out, Json{{"kl", encode_real(s.kl)},
                         {"total_variation", encode_real(s.total_variation)},
                         {"pinsker", encode_real(s.pinsker())},
                         {"sharpened_bound", encode_real(s.sharpened_bound())},
                         {"weighted_bound", encode_real(s.weighted_bound())},
                         {"converged", s.converged},
                         {"diverges", s.diverges},
                         {"terms", terms},
                         {"reports", rs}});
  } else {
    Table t({"k", "partial sum", "bound term", "weighted term"});
    for (std::size_t k = 0; k < s.partial_sums.size(); ++k)
      t.add({std::to_string(k), num(s.partial_sums[k]),
             k < s.lower_bound_terms.size() ? num(s.lower_bound_terms[k]) : "",
             k < s.weighted_lower_bound_terms.size() ? num(s.weighted_lower_bound_terms[k]) : ""});
    t.print(out);
    out << "kl = " << num(s.kl) << ", tv = " << num(s.total_variation) << ", pinsker 2tv^2 = " << num(s.pinsker())
        << '\n';
    out << "sharpened bound = " << num(s.sharpened_bound()) << ", weighted bound = " << num(s.weighted_bound())
        << (s.converged ? "" : " (not converged)") << '\n';
    for (const auto& r : reports)
      out << r.check_id << ": " << verdict_name(r.verdict) << " (margin " << num(r.margin) << ")\n";
  }
  return ok ? kPass : kFail;
}

// --- table --------------------------------------------------------------------

struct TableOptions {
  std::vector<double> ms{2.0};
  std::vector<double> alphas{0.5};
  std::vector<double> s_values{1.0};
  bool json = false;
};

inline int run_table(const TableOptions& o, std::ostream& out) {
  std::vector<ConvexGenerator> rows;
  try {
    for (Builtin b : kAllBuiltins) {
      if (b == Builtin::sason_s) {
        for (double s : o.s_values) rows.push_back(make_builtin(b, s));
      } else if (b == Builtin::alpha_divergence) {
        for (double a : o.alphas) rows.push_back(make_builtin(b, a));
      } else {
        rows.push_back(make_builtin(b));
      }
    }
  } catch (const InvalidArgument& e) {
    throw InputError("--alpha/--s", e.what());
  }
  bool ok = true;
  Json js = Json::array();
  Table t({"generator", "M", "interval", "kappa", "certified", "worst margin", "at t"});
  for (double m : o.ms) {
    if (!(m > 0.0) || !std::isfinite(m)) throw InputError("--M", "must be positive and finite");
    for (const auto& g : rows) {
      const auto row = table_row(g, m);
      const auto audit = verify_certificate(g, {row.interval, row.kappa, CertificateMethod::closed_form});
      ok = ok && audit.passed;
      t.add({g.name(), format_param(m), row.interval.to_string(), num(row.kappa), audit.passed ? "yes" : "NO",
             num(audit.worst_margin), num(audit.worst_t)});
      js.push_back(Json{{"generator", g.name()},
                        {"M", m},
                        {"interval", row.interval.to_string()},
                        {"kappa", encode_real(row.kappa)},
                        {"certified", audit.passed},
                        {"worst_margin", encode_real(audit.worst_margin)},
                        {"worst_t", encode_real(audit.worst_t)},
                        {"grid_points", audit.points}});
    }
  }
  if (o.json) {
    write_json(out, Json{{"rows", js}});
  } else {
    t.print(out);
  }
  return ok ? kPass : kFail;
}

}  // namespace detail

// Parses argv-style arguments (without the program name) and runs the
// selected subcommand.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"divkit: f-divergences, kappa certificates, skewing and Bayes-risk bounds", "divkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "divkit 0.1.0");

  detail::ComputeOptions co;
  auto* compute = app.add_subcommand("compute", "divergence panel between two distribution files");
  compute->add_option("p", co.p_path, "first distribution (JSON or CSV)")->required();
  compute->add_option("q", co.q_path, "second distribution (JSON or CSV)")->required();
  compute->add_option("--divergence,-d", co.divergences, "comma-separated generators, e.g. kl,alpha:0.5")
      ->capture_default_str();
  compute->add_option("--skew", co.skews, "skew pair 't,s' (repeatable)");
  compute->add_option("--scheme", co.schemes, "skew scheme 'alphas=... weights=...' (repeatable)")->expected(1, 2);
  compute->add_flag("--symmetrize", co.symmetrize, "add the skew symmetrization");
  compute->add_flag("--json", co.json, "machine-readable output");

  detail::CheckOptions ko;
  auto* check = app.add_subcommand("check", "run the randomized inequality registry");
  check->add_option("--seed", ko.seed, "instance stream seed")->capture_default_str();
  check->add_option("--count", ko.count, "instances per check")->capture_default_str()->check(CLI::PositiveNumber);
  check->add_option("--support-sizes", ko.support_sizes, "comma-separated support sizes")->capture_default_str();
  check->add_option("--hypotheses", ko.hypotheses, "comma-separated hypothesis counts")->capture_default_str();
  check->add_option("--mass-floor", ko.mass_floor, "minimum raw atom weight")->capture_default_str();
  check->add_option("--zero-probability", ko.zero_probability, "chance of zeroed atoms")->capture_default_str();
  check->add_option("--checks", ko.checks, "comma-separated check ids (default: all)");
  check->add_option("--tolerance", ko.tolerance, "margin tolerance")->capture_default_str();
  check->add_option("--threads", ko.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  check->add_flag("--json", ko.json, "machine-readable report");
  check->add_flag("--list", ko.list, "list registered checks");
  check->add_flag("--verbose,-v", ko.verbose, "show every failure");

  detail::BayesOptions bo;
  auto* bayes = app.add_subcommand("bayes", "Bayes risk, decompositions and bounds for a problem file");
  bayes->add_option("--problem,problem", bo.problem_path, "problem JSON")->required();
  bayes->add_option("--divergence,-d", bo.divergences, "comma-separated generators")->capture_default_str();
  bayes->add_option("--tolerance", bo.tolerance, "margin tolerance")->capture_default_str();
  bayes->add_flag("--json", bo.json, "machine-readable output");

  detail::SeriesOptions so;
  auto* series = app.add_subcommand("series", "relative-entropy series and sharpened Pinsker trace");
  series->add_option("p", so.p_path, "first distribution")->required();
  series->add_option("q", so.q_path, "second distribution")->required();
  series->add_option("--max-terms", so.max_terms, "series truncation")->capture_default_str()->check(CLI::PositiveNumber);
  series->add_option("--tolerance", so.tolerance, "margin tolerance")->capture_default_str();
  series->add_flag("--json", so.json, "machine-readable output");

  detail::TableOptions to;
  auto* table = app.add_subcommand("table", "kappa table with finite-difference certification");
  table->add_option("--M", to.ms, "ratio bound(s)")->capture_default_str()->delimiter(',');
  table->add_option("--alpha", to.alphas, "alpha-divergence parameter(s)")->capture_default_str()->delimiter(',');
  table->add_option("--s", to.s_values, "Sason generator parameter(s)")->capture_default_str()->delimiter(',');
  table->add_flag("--json", to.json, "machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*compute) return detail::run_compute(co, out);
    if (*check) return detail::run_check(ko, out);
    if (*bayes) return detail::run_bayes(bo, out);
    if (*series) return detail::run_series(so, out);
    if (*table) return detail::run_table(to, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace divkit::cli
