#include "isoreg/iterative_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isoreg/error.hpp"
#include "isoreg/model_selection.hpp"

namespace isoreg {

std::string_view to_string(Algorithm a) noexcept {
  return a == Algorithm::iir ? "iir" : "iibr";
}

std::optional<Algorithm> parse_algorithm(std::string_view token) noexcept {
  if (token == "iir") return Algorithm::iir;
  if (token == "iibr") return Algorithm::iibr;
  return std::nullopt;
}

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::target_reached: return "target_reached";
    case StopReason::tolerance_met: return "tolerance_met";
    case StopReason::exact_fit: return "exact_fit";
    case StopReason::stalled: return "stalled";
    case StopReason::cap_reached: return "cap_reached";
  }
  return "unknown";
}

const IterationState& FitTrace::at(std::size_t k) const {
  if (k == 0 || k > states.size())
    throw InvalidArgument("iteration " + std::to_string(k) + " not in trace");
  return states[k - 1];
}

namespace {

std::vector<double> minus(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("length mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct Plan {
  std::size_t cap = 0;
  std::size_t target = 0;  // 0 when the rule is tolerance-driven
  double epsilon = 0.0;
};

Plan plan_for(const StoppingPolicy& stop) {
  Plan plan;
  if (const auto* fixed = std::get_if<FixedIterations>(&stop.rule)) {
    if (fixed->k == 0) throw InvalidArgument("fixed iteration count must be >= 1");
    if (stop.max_iterations != 0 && stop.max_iterations < fixed->k)
      throw InvalidArgument("max_iter below fixed k");
    plan.target = fixed->k;
    plan.cap = fixed->k;
  } else if (const auto* tol = std::get_if<ResidualTolerance>(&stop.rule)) {
    if (stop.max_iterations == 0) throw InvalidArgument("no cap");
    if (!(tol->epsilon >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
    plan.cap = stop.max_iterations;
    plan.epsilon = tol->epsilon;
  } else {
    const auto& crit = std::get<CriterionStop>(stop.rule);
    if (crit.grid.empty()) throw InvalidArgument("empty grid");
    if (std::find(crit.grid.begin(), crit.grid.end(), std::size_t{0}) != crit.grid.end())
      throw InvalidArgument("grid entries must be >= 1");
    plan.target = *std::max_element(crit.grid.begin(), crit.grid.end());
    if (stop.max_iterations != 0 && stop.max_iterations < plan.target)
      throw InvalidArgument("grid exceeds max_iter");
    plan.cap = plan.target;
  }
  return plan;
}

}  // namespace

StepResult iir_step(const SortedSample& sample, std::span<const double> b_prev) {
  StepResult r;
  r.u = project_isotone(sample.weighted(minus(sample.y(), b_prev))).expand();
  r.b = project_antitone(sample.weighted(minus(sample.y(), r.u))).expand();
  return r;
}

StepResult iibr_step(const SortedSample& sample, std::span<const double> y_hat_prev) {
  const std::vector<double> residual = minus(sample.y(), y_hat_prev);
  StepResult r;
  r.u = project_isotone(sample.weighted(residual)).expand();
  r.b = project_antitone(sample.weighted(minus(residual, r.u))).expand();
  return r;
}

std::vector<double> translated_cone_projection(std::span<const double> y,
                                               std::span<const double> x,
                                               std::span<const double> weights) {
  std::vector<double> shifted = minus(x, y);
  std::vector<double> w = weights.empty() ? std::vector<double>(y.size(), 1.0)
                                          : std::vector<double>(weights.begin(), weights.end());
  std::vector<double> out = project_isotone(WeightedSequence(std::move(shifted), std::move(w))).expand();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

double weighted_rss(const SortedSample& sample, std::span<const double> fit) {
  if (fit.size() != sample.size()) throw InvalidInput("length mismatch");
  double rss = 0.0;
  for (std::size_t i = 0; i < fit.size(); ++i) {
    const double r = sample.y()[i] - fit[i];
    rss += sample.w()[i] * r * r;
  }
  return rss;
}

FitTrace run(const SortedSample& sample, Algorithm algorithm, const StoppingPolicy& stop,
             const TraceOptions& options) {
  const Plan plan = plan_for(stop);
  const std::size_t n = sample.size();
  const std::span<const double> y = sample.y();
  const double stall_tol = 1e-15 * (1.0 + max_abs(y));

  FitTrace trace{sample, algorithm, {}, StopReason::cap_reached};
  trace.states.reserve(std::min<std::size_t>(plan.cap, options.retain_vectors_up_to + 1));

  std::vector<double> u_hat(n, 0.0), b_hat(n, 0.0), y_hat(n, 0.0);
  for (std::size_t k = 1; k <= plan.cap; ++k) {
    std::vector<double> y_prev = y_hat;
    if (algorithm == Algorithm::iir) {
      StepResult step = iir_step(sample, b_hat);
      u_hat = std::move(step.u);
      b_hat = std::move(step.b);
      for (std::size_t i = 0; i < n; ++i) y_hat[i] = u_hat[i] + b_hat[i];
    } else {
      StepResult step = iibr_step(sample, y_hat);
      for (std::size_t i = 0; i < n; ++i) {
        u_hat[i] += step.u[i];
        b_hat[i] += step.b[i];
        y_hat[i] = y_prev[i] + step.u[i] + step.b[i];
      }
    }

    IterationState state;
    state.k = k;
    state.rss = weighted_rss(sample, y_hat);
    state.level_sets = level_set_count(y_hat);
    state.u_hat = u_hat;
    state.b_hat = b_hat;
    state.y_hat = y_hat;

    if (k > options.retain_vectors_up_to) {
      // Only the previous state can still hold vectors, except on the first
      // crossing of the bound.
      auto first = k == options.retain_vectors_up_to + 1 ? trace.states.begin()
                                                         : trace.states.end() - 1;
      for (auto it = first; it != trace.states.end(); ++it) {
        it->u_hat = {};
        it->b_hat = {};
        it->y_hat = {};
      }
    }
    trace.states.push_back(std::move(state));

    const double residual = max_abs_diff(y, y_hat);
    if (plan.target != 0 && k == plan.target) {
      trace.stop_reason = StopReason::target_reached;
      break;
    }
    if (plan.target == 0 && residual <= plan.epsilon) {
      trace.stop_reason = StopReason::tolerance_met;
      break;
    }
    if (residual == 0.0) {
      trace.stop_reason = StopReason::exact_fit;
      break;
    }
    if (max_abs_diff(y_hat, y_prev) <= stall_tol) {
      trace.stop_reason = StopReason::stalled;
      break;
    }
  }
  return trace;
}

}  // namespace isoreg
