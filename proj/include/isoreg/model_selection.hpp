#pragma once

// Choosing the stopping iteration by minimizing
//   log(RSS_k / n) + phi(p_k)
// over a grid of iterations, with p_k the number of level sets of y_hat(k).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isoreg/criterion.hpp"
#include "isoreg/iterative_fit.hpp"

namespace isoreg {

/// Number of maximal runs of exactly equal consecutive values.
std::size_t level_set_count(std::span<const double> v);

/// Complexity penalty; nullopt where the criterion is undefined
/// (aicc needs n - p - 2 > 0, gcv needs p < n, all need 1 <= p).
std::optional<double> phi(Criterion criterion, std::size_t p, std::size_t n);

/// log(rss / n) + phi(p); nullopt when phi is undefined or rss == 0.
std::optional<double> criterion_value(Criterion criterion, double rss, std::size_t p,
                                      std::size_t n);

struct SelectionEntry {
  std::size_t k = 0;
  double rss = 0.0;
  std::size_t level_sets = 0;
  std::optional<double> value;  // nullopt: excluded
  bool exact_fit = false;       // rss == 0
};

struct SelectionReport {
  Criterion criterion = Criterion::aicc;
  std::vector<std::size_t> grid;
  std::vector<SelectionEntry> entries;
  std::size_t chosen_k = 0;
};

/// Minimizes the criterion over the grid, ties to the smallest k. A grid
/// entry beyond the last state of a trace that stopped at a fixed point
/// (exact fit or stall) maps onto that last state, so it never beats it.
/// Exact fits (rss == 0) with p < n win outright at their smallest k; exact
/// fits with p == n are excluded. Throws DegenerateCriterion when every
/// entry is excluded.
SelectionReport select_k(const FitTrace& trace, Criterion criterion,
                         std::span<const std::size_t> grid);

/// "a..b" or "a..b:step", 1-based and inclusive.
std::vector<std::size_t> parse_grid(const std::string& spec);

/// 1..min(50, n).
std::vector<std::size_t> default_grid(std::size_t n);

/// A trace together with the iteration retained as the estimate.
struct FitResult {
  FitTrace trace;
  std::optional<SelectionReport> report;
  std::size_t chosen_k = 0;

  const IterationState& chosen() const { return trace.at(chosen_k); }
};

/// Runs the iteration under the policy. With a CriterionStop the iteration
/// selected by select_k becomes the estimate; otherwise the last state.
FitResult fit(const SortedSample& sample, Algorithm algorithm, const StoppingPolicy& stop,
              const TraceOptions& options = {});

}  // namespace isoreg
