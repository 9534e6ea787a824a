#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <string>
#include <string_view>
#include <vector>

#include "divkit/errors.hpp"
#include "divkit/harness/checks_bayes.hpp"
#include "divkit/harness/checks_generators.hpp"
#include "divkit/harness/checks_skew.hpp"
#include "divkit/harness/context.hpp"
#include "divkit/harness/instances.hpp"
#include "divkit/report.hpp"

namespace divkit::harness {

struct CheckSpec {
  std::string id;
  std::string summary;
  std::function<void(CheckContext&)> run;
};

inline const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> checks{
      {"kappa_table", "closed-form kappa(M) passes the finite-difference certificate", check_kappa_table},
      {"chi2_lower_bound", "D_f >= (kappa/2) chi2 with kappa from the likelihood-ratio range", check_chi2_lower_bound},
      {"functional_dominance", "c D_f >= D_g whenever c f - g is convex", check_functional_dominance},
      {"chi2_sharpness", "D_f / chi2 -> f''(1)/2 under small perturbations", check_chi2_sharpness},
      {"mixture_reverse_pinsker", "mixture average bounds kappa TV^2 / 2", check_mixture_reverse_pinsker},
      {"barycenter_reverse_pinsker", "distance to the barycenter bounds pairwise TV^2",
       check_barycenter_reverse_pinsker},
      {"no_reverse_pinsker", "D_f / TV is unbounded on two-point instances", check_no_reverse_pinsker},
      {"vincze_le_cam_floor", "Delta_f >= (kappa/4) Vincze-Le Cam", check_vincze_le_cam_floor},
      {"skew_kl_tv", "skewed KL <= C(a) D_inf(a||b) TV", check_skew_kl_tv},
      {"jsd_tv", "JSD <= ln 2 TV", check_jsd_tv},
      {"generalized_js_tv", "Var(alpha) TV^2 <= JS^{alpha,w} <= A H(w) TV", check_generalized_js_tv},
      {"generalized_chi2_js", "chi2^{alpha,w} <= 2 N_inf JS^{alpha,w}", check_generalized_chi2_js},
      {"guntuboyina_sharpened", "sum lambda_i D_f(p_i||q) >= D_f(R||Q) + kappa W / 2", check_guntuboyina_sharpened},
      {"uniform_prior_bound", "two-hypothesis uniform-prior sharpened bound", check_uniform_prior_bound},
      {"compensation_bound", "KL average >= D(p||q) + D(R||P) + t* W / 2", check_compensation_bound},
      {"jsd_lower_bound", "JSD >= D((1+V)/2||1/2) + chi2 corrections", check_jsd_lower_bound},
      {"sharpened_pinsker", "KL >= 2 TV^2 + chi2 series; JSD series reproduces KL", check_sharpened_pinsker},
      {"kappa_jensen_gap", "kappa-convex Jensen gap on mixtures", check_kappa_jensen_gap},
      {"dual_kappa_transfer", "kappa of f* on [1/M, 1/m] from kappa of f", check_dual_kappa_transfer},
      {"skew_tv", "D(P || tP + (1-t)Q) <= -ln t TV", check_skew_tv},
      {"tv_ratio_cap", "D_f <= (f(0) + f*(0)) TV", check_tv_ratio_cap},
      {"coarsening_dpi", "data processing under coarsening", check_coarsening_dpi},
      {"dual_swap", "D_{f*}(P||Q) = D_f(Q||P)", check_dual_swap},
      {"binary_consistency", "binary divergence equals the two-point f-divergence", check_binary_consistency},
      {"affine_invariance", "f + c(t - 1) leaves D_f unchanged", check_affine_invariance},
      {"skew_generator_equivalence", "skewed generator equals direct mixture evaluation",
       check_skew_generator_equivalence},
      {"symmetrization_identities", "skew symmetrization identities", check_symmetrization_identities},
      {"compensation_identity", "sum t_i D(P_i||Q) = D(P||Q) + sum t_i D(P_i||P)", check_compensation_identity},
      {"two_point_risk", "2R = 1 - TV for two hypotheses, uniform prior", check_two_point_risk},
      {"decomposition_reconstruction", "convex decompositions of q and p reconstruct atomwise",
       check_decomposition_reconstruction},
      {"bayes_risk_oracle", "Bayes risk equals exhaustive minimal error", check_bayes_risk_oracle},
  };
  return checks;
}

inline const CheckSpec& find_check(std::string_view id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  throw InvalidArgument("unknown check id: " + std::string(id));
}

struct RunConfig {
  InstanceConfig instances;
  double tolerance = kDefaultTolerance;
  std::vector<std::string> checks;  // empty selects every registered check
  std::size_t threads = 1;
};

struct RunSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t degenerate = 0;

  std::size_t total() const noexcept { return passed + failed + skipped + degenerate; }
  bool ok() const noexcept { return failed == 0; }
};

inline RunSummary summarize(const std::vector<CheckReport>& reports) {
  RunSummary s;
  for (const auto& r : reports) {
    switch (r.verdict) {
      case Verdict::pass: ++s.passed; break;
      case Verdict::fail: ++s.failed; break;
      case Verdict::skipped: ++s.skipped; break;
      case Verdict::degenerate: ++s.degenerate; break;
    }
  }
  return s;
}

inline std::vector<CheckReport> run_check(const CheckSpec& spec, const InstanceConfig& config, double tolerance) {
  std::vector<CheckReport> out;
  InstanceGenerator gen(config, spec.id);
  CheckContext ctx(spec.id, gen, tolerance, out);
  spec.run(ctx);
  return out;
}

// Reports come back grouped by check in the order requested, instances in
// stream order, regardless of the thread count.
inline std::vector<CheckReport> run_registry(const RunConfig& config) {
  config.instances.validate();
  if (!(config.tolerance >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  std::vector<const CheckSpec*> selected;
  if (config.checks.empty()) {
    for (const auto& c : registry()) selected.push_back(&c);
  } else {
    for (const auto& id : config.checks) {
      const CheckSpec* spec = &find_check(id);
      if (std::find(selected.begin(), selected.end(), spec) == selected.end()) selected.push_back(spec);
    }
  }

  std::vector<std::vector<CheckReport>> parts(selected.size());
  const std::size_t workers = std::max<std::size_t>(1, config.threads);
  for (std::size_t begin = 0; begin < selected.size(); begin += workers) {
    const std::size_t end = std::min(selected.size(), begin + workers);
    if (workers == 1) {
      parts[begin] = run_check(*selected[begin], config.instances, config.tolerance);
      continue;
    }
    std::vector<std::future<std::vector<CheckReport>>> futures;
    for (std::size_t i = begin; i < end; ++i)
      futures.push_back(std::async(std::launch::async, run_check, std::cref(*selected[i]),
                                   std::cref(config.instances), config.tolerance));
    for (std::size_t i = begin; i < end; ++i) parts[i] = futures[i - begin].get();
  }

  std::vector<CheckReport> reports;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(reports));
  return reports;
}

}  // namespace divkit::harness
