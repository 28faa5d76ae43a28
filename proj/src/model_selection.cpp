#include "isoreg/model_selection.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "isoreg/error.hpp"

namespace isoreg {

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::aic: return "aic";
    case Criterion::bic: return "bic";
    case Criterion::aicc: return "aicc";
    case Criterion::gcv: return "gcv";
  }
  return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view token) noexcept {
  if (token == "aic") return Criterion::aic;
  if (token == "bic") return Criterion::bic;
  if (token == "aicc") return Criterion::aicc;
  if (token == "gcv") return Criterion::gcv;
  return std::nullopt;
}

std::size_t level_set_count(std::span<const double> v) {
  if (v.empty()) return 0;
  std::size_t runs = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[i - 1]) ++runs;
  return runs;
}

std::optional<double> phi(Criterion criterion, std::size_t p, std::size_t n) {
  if (p < 1 || n < 1) return std::nullopt;
  const double pd = static_cast<double>(p);
  const double nd = static_cast<double>(n);
  switch (criterion) {
    case Criterion::aic:
      return 2.0 * pd / nd;
    case Criterion::bic:
      return pd / nd * std::log(nd);
    case Criterion::aicc:
      if (p + 2 >= n) return std::nullopt;
      return 1.0 + 2.0 * (pd + 1.0) / (nd - pd - 2.0);
    case Criterion::gcv:
      if (p >= n) return std::nullopt;
      return -2.0 * std::log(1.0 - pd / nd);
  }
  return std::nullopt;
}

std::optional<double> criterion_value(Criterion criterion, double rss, std::size_t p,
                                      std::size_t n) {
  if (!(rss > 0.0)) return std::nullopt;
  const auto penalty = phi(criterion, p, n);
  if (!penalty) return std::nullopt;
  return std::log(rss / static_cast<double>(n)) + *penalty;
}

SelectionReport select_k(const FitTrace& trace, Criterion criterion,
                         std::span<const std::size_t> grid) {
  if (grid.empty()) throw InvalidArgument("empty grid");
  if (trace.states.empty()) throw InvalidArgument("empty trace");
  const bool fixed_point = trace.stop_reason == StopReason::exact_fit ||
                           trace.stop_reason == StopReason::stalled;
  const std::size_t n = trace.sample.size();

  SelectionReport report;
  report.criterion = criterion;
  report.grid.assign(grid.begin(), grid.end());
  std::sort(report.grid.begin(), report.grid.end());
  report.grid.erase(std::unique(report.grid.begin(), report.grid.end()), report.grid.end());

  std::optional<std::size_t> best_k;
  double best_value = 0.0;
  std::optional<std::size_t> exact_k;
  for (std::size_t k : report.grid) {
    if (k == 0) throw InvalidArgument("grid entries must be >= 1");
    if (k > trace.iterations()) {
      if (!fixed_point)
        throw InvalidArgument("grid entry " + std::to_string(k) + " beyond trace");
      continue;
    }
    const IterationState& s = trace.at(k);
    SelectionEntry e{k, s.rss, s.level_sets, std::nullopt, s.rss == 0.0};
    if (e.exact_fit) {
      if (e.level_sets < n && !exact_k) exact_k = k;
    } else {
      e.value = criterion_value(criterion, s.rss, s.level_sets, n);
      if (e.value && (!best_k || *e.value < best_value)) {
        best_k = k;
        best_value = *e.value;
      }
    }
    report.entries.push_back(e);
  }
  if (exact_k) {
    report.chosen_k = *exact_k;
  } else if (best_k) {
    report.chosen_k = *best_k;
  } else {
    throw DegenerateCriterion("criterion degenerate on grid");
  }
  return report;
}

namespace {

std::size_t parse_count(std::string_view text, const std::string& spec) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw InvalidArgument("invalid grid '" + spec + "'");
  return value;
}

}  // namespace

std::vector<std::size_t> parse_grid(const std::string& spec) {
  const std::string_view s = spec;
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) throw InvalidArgument("invalid grid '" + spec + "'");
  const std::string_view head = s.substr(0, dots);
  std::string_view tail = s.substr(dots + 2);
  std::size_t step = 1;
  if (const auto colon = tail.find(':'); colon != std::string_view::npos) {
    step = parse_count(tail.substr(colon + 1), spec);
    tail = tail.substr(0, colon);
  }
  const std::size_t a = parse_count(head, spec);
  const std::size_t b = parse_count(tail, spec);
  if (a < 1 || b < a || step < 1) throw InvalidArgument("invalid grid '" + spec + "'");
  std::vector<std::size_t> grid;
  for (std::size_t k = a; k <= b; k += step) grid.push_back(k);
  return grid;
}

std::vector<std::size_t> default_grid(std::size_t n) {
  std::vector<std::size_t> grid(std::max<std::size_t>(1, std::min<std::size_t>(50, n)));
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = i + 1;
  return grid;
}

FitResult fit(const SortedSample& sample, Algorithm algorithm, const StoppingPolicy& stop,
              const TraceOptions& options) {
  FitResult result{run(sample, algorithm, stop, options), std::nullopt, 0};
  if (const auto* crit = std::get_if<CriterionStop>(&stop.rule)) {
    result.report = select_k(result.trace, crit->criterion, crit->grid);
    result.chosen_k = result.report->chosen_k;
    if (!result.chosen().has_vectors()) {
      // Vectors of the chosen state were dropped; replay up to it.
      StoppingPolicy replay{FixedIterations{result.chosen_k}, 0};
      FitTrace again = run(sample, algorithm, replay, {result.chosen_k});
      result.trace.states[result.chosen_k - 1] = std::move(again.states.back());
    }
  } else {
    result.chosen_k = result.trace.iterations();
  }
  return result;
}

}  // namespace isoreg
