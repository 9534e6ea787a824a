#pragma once

// Distribution files (JSON or CSV), Bayes problem files and report JSON.

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "divkit/bayes.hpp"
#include "divkit/distribution.hpp"
#include "divkit/errors.hpp"
#include "divkit/extended.hpp"
#include "divkit/report.hpp"

namespace divkit {

using Json = nlohmann::json;

// Non-finite values travel as the strings "inf", "-inf" and "nan".
inline Json encode_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double decode_real(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return kNaN;
  }
  throw InputError(field, "expected a number");
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

inline double parse_mass(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError(field, "'" + text + "' is not a number");
  }
  if (used != text.size()) throw InputError(field, "'" + text + "' is not a number");
  return v;
}

inline DiscreteDistribution build_distribution(std::vector<std::string> support, std::vector<double> mass,
                                               const std::string& where) {
  try {
    return DiscreteDistribution(std::move(support), std::move(mass));
  } catch (const InvalidArgument& e) {
    throw InputError(where + "mass", e.what());
  }
}

}  // namespace detail

// {"support": [...], "mass": [...]}; support labels may be strings or numbers.
// When support is missing the atoms are labelled 0, 1, ...
inline DiscreteDistribution distribution_from_json(const Json& j, const std::string& where = {}) {
  if (!j.is_object()) throw InputError(where.empty() ? "distribution" : where, "expected an object");
  if (!j.contains("mass")) throw InputError(where + "mass", "missing");
  const Json& mj = j.at("mass");
  if (!mj.is_array()) throw InputError(where + "mass", "expected an array");
  std::vector<double> mass;
  for (std::size_t i = 0; i < mj.size(); ++i) {
    const std::string field = where + "mass[" + std::to_string(i) + "]";
    if (!mj[i].is_number()) throw InputError(field, "expected a number");
    mass.push_back(mj[i].get<double>());
  }
  std::vector<std::string> support;
  if (j.contains("support")) {
    const Json& sj = j.at("support");
    if (!sj.is_array()) throw InputError(where + "support", "expected an array");
    for (std::size_t i = 0; i < sj.size(); ++i) {
      if (sj[i].is_string()) {
        support.push_back(sj[i].get<std::string>());
      } else if (sj[i].is_number()) {
        support.push_back(sj[i].dump());
      } else {
        throw InputError(where + "support[" + std::to_string(i) + "]", "expected a string or number");
      }
    }
    if (support.size() != mass.size())
      throw InputError(where + "support", "has " + std::to_string(support.size()) + " labels for " +
                                              std::to_string(mass.size()) + " masses");
  } else {
    support = DiscreteDistribution::default_labels(mass.size());
  }
  return detail::build_distribution(std::move(support), std::move(mass), where);
}

inline Json to_json(const DiscreteDistribution& d) {
  return Json{{"support", d.support()}, {"mass", d.mass()}};
}

// CSV with a "label,mass" header line.
inline DiscreteDistribution distribution_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<std::string> support;
  std::vector<double> mass;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto comma = line.find(',');
    const std::string where = "line " + std::to_string(line_no);
    if (comma == std::string::npos) throw InputError(where, "expected 'label,mass'");
    const auto left = detail::trim(std::string_view(line).substr(0, comma));
    const auto right = detail::trim(std::string_view(line).substr(comma + 1));
    if (!header) {
      if (left != "label" || right != "mass") throw InputError("header", "expected 'label,mass'");
      header = true;
      continue;
    }
    if (left.empty()) throw InputError(where + ": label", "empty");
    support.push_back(left);
    mass.push_back(detail::parse_mass(right, where + ": mass"));
  }
  if (!header) throw InputError("header", "missing 'label,mass' header");
  return detail::build_distribution(std::move(support), std::move(mass), "");
}

// JSON when the first non-blank character is '{', CSV otherwise.
inline DiscreteDistribution parse_distribution(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError("json", e.what());
    }
    return distribution_from_json(j);
  }
  return distribution_from_csv(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline DiscreteDistribution load_distribution(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_distribution(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.field(), e.detail());
  }
}

struct ProblemFile {
  BayesProblem problem;
  std::vector<double> reference;  // aligned with problem.labels()
  bool reference_given = false;
};

// {"hypotheses": [dist, ...], "prior": [...], "q": dist (optional)}.
// Without q the reference is the prior-weighted barycenter.
inline ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("problem", "expected an object");
  if (!j.contains("hypotheses") || !j.at("hypotheses").is_array())
    throw InputError("hypotheses", "missing or not an array");
  std::vector<DiscreteDistribution> hs;
  const Json& hj = j.at("hypotheses");
  for (std::size_t i = 0; i < hj.size(); ++i)
    hs.push_back(distribution_from_json(hj[i], "hypotheses[" + std::to_string(i) + "]."));
  if (hs.empty()) throw InputError("hypotheses", "empty");
  std::vector<double> prior;
  if (j.contains("prior")) {
    const Json& pj = j.at("prior");
    if (!pj.is_array()) throw InputError("prior", "expected an array");
    for (std::size_t i = 0; i < pj.size(); ++i) {
      if (!pj[i].is_number()) throw InputError("prior[" + std::to_string(i) + "]", "expected a number");
      prior.push_back(pj[i].get<double>());
    }
  } else {
    prior.assign(hs.size(), 1.0 / static_cast<double>(hs.size()));
  }
  std::optional<DiscreteDistribution> q;
  if (j.contains("q")) q = distribution_from_json(j.at("q"), "q.");
  try {
    BayesProblem prob(std::move(hs), std::move(prior));
    if (!q) {
      auto ref = prob.barycenter();
      return {std::move(prob), std::move(ref), false};
    }
    BayesProblem ext = prob.extended_by(*q);
    auto ref = ext.masses_of(*q);
    return {std::move(ext), std::move(ref), true};
  } catch (const InvalidArgument& e) {
    throw InputError("prior", e.what());
  }
}

inline ProblemFile load_problem(const std::string& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path, e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.field(), e.detail());
  }
}

inline Json to_json(const CheckReport& r) {
  Json aux = Json::array();
  for (const auto& [k, v] : r.aux) aux.push_back(Json{{"name", k}, {"value", encode_real(v)}});
  return Json{{"check", r.check_id},
              {"instance", r.instance},
              {"lhs", encode_real(r.lhs)},
              {"rhs", encode_real(r.rhs)},
              {"margin", encode_real(r.margin)},
              {"tolerance", encode_real(r.tolerance)},
              {"verdict", std::string(verdict_name(r.verdict))},
              {"reason", r.reason},
              {"aux", aux}};
}

inline Verdict verdict_from_name(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "skipped") return Verdict::skipped;
  if (s == "degenerate") return Verdict::degenerate;
  throw InputError("verdict", "unknown verdict '" + std::string(s) + "'");
}

inline CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.check_id = j.at("check").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.lhs = decode_real(j.at("lhs"), "lhs");
  r.rhs = decode_real(j.at("rhs"), "rhs");
  r.margin = decode_real(j.at("margin"), "margin");
  r.tolerance = decode_real(j.at("tolerance"), "tolerance");
  r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  r.reason = j.at("reason").get<std::string>();
  for (const auto& a : j.at("aux")) r.aux.emplace_back(a.at("name").get<std::string>(), decode_real(a.at("value"), "aux"));
  return r;
}

}  // namespace divkit
