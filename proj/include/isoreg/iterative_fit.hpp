#pragma once

// Iterative isotonic regression (backfitting iso/anti on partial residuals)
// and its bias-reduction twin (iso/anti on the global residual, accumulated).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "isoreg/criterion.hpp"
#include "isoreg/sample.hpp"

namespace isoreg {

enum class Algorithm { iir, iibr };

std::string_view to_string(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view token) noexcept;

/// State after iteration k (k >= 1). The vectors may be empty when the trace
/// dropped them to bound memory; rss and level_sets are always present.
struct IterationState {
  std::size_t k = 0;
  std::vector<double> u_hat;
  std::vector<double> b_hat;
  std::vector<double> y_hat;
  double rss = 0.0;
  std::size_t level_sets = 0;

  bool has_vectors() const noexcept { return !y_hat.empty(); }
};

enum class StopReason {
  target_reached,  // fixed k or largest grid entry reached
  tolerance_met,   // residual tolerance satisfied
  exact_fit,       // y_hat == y
  stalled,         // successive fits identical at machine precision
  cap_reached,     // iteration cap hit before the tolerance
};

std::string_view to_string(StopReason r) noexcept;

/// Accumulated states 1..K. Both algorithms record u_hat, b_hat and y_hat in
/// the same (accumulated) form.
struct FitTrace {
  SortedSample sample;
  Algorithm algorithm = Algorithm::iir;
  std::vector<IterationState> states;
  StopReason stop_reason = StopReason::target_reached;

  std::size_t iterations() const noexcept { return states.size(); }
  const IterationState& at(std::size_t k) const;  // 1-based
  const IterationState& last() const { return states.back(); }
};

struct StepResult {
  std::vector<double> u;
  std::vector<double> b;
};

/// One backfitting cycle: u = iso(y - b_prev), b = anti(y - u).
StepResult iir_step(const SortedSample& sample, std::span<const double> b_prev);

/// One bias-reduction cycle on the global residual r = y - y_hat_prev:
/// u~ = iso(r), b~ = anti(r - u~).
StepResult iibr_step(const SortedSample& sample, std::span<const double> y_hat_prev);

/// Projection onto the translated cone y + C+: y + iso(x - y).
std::vector<double> translated_cone_projection(std::span<const double> y,
                                               std::span<const double> x,
                                               std::span<const double> weights = {});

struct FixedIterations {
  std::size_t k = 1;
};

/// Stop at the first k with ||y - y_hat(k)||_inf <= epsilon.
struct ResidualTolerance {
  double epsilon = 1e-6;
};

/// Run through the largest grid entry; the stopping iteration is then
/// chosen by select_k in model_selection.
struct CriterionStop {
  Criterion criterion = Criterion::aicc;
  std::vector<std::size_t> grid;
};

struct StoppingPolicy {
  std::variant<FixedIterations, ResidualTolerance, CriterionStop> rule = FixedIterations{};
  /// Hard iteration cap. Zero means unset, which is only accepted for
  /// FixedIterations (the cap then equals k).
  std::size_t max_iterations = 0;
};

struct TraceOptions {
  /// Vectors are kept for every state while K stays within this bound; past
  /// it only diagnostics are kept, plus the vectors of the final state.
  std::size_t retain_vectors_up_to = 10'000;
};

/// Iterate until the policy stops. The iteration also halts early when the
/// fit reproduces y exactly or when ||y_hat(k) - y_hat(k-1)||_inf falls to
/// 1e-15 * (1 + ||y||_inf); later states would repeat the last one.
FitTrace run(const SortedSample& sample, Algorithm algorithm, const StoppingPolicy& stop,
             const TraceOptions& options = {});

/// Weighted residual sum of squares sum w_i (y_i - fit_i)^2.
double weighted_rss(const SortedSample& sample, std::span<const double> fit);

}  // namespace isoreg
