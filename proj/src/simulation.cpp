#include "isoreg/simulation.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "isoreg/data_io.hpp"
#include "isoreg/error.hpp"

namespace isoreg {

std::string_view to_string(SignalKind k) noexcept {
  return k == SignalKind::piecewise_constant ? "piecewise_constant" : "bv_smooth_mix";
}

std::optional<SignalKind> parse_signal_kind(std::string_view token) noexcept {
  if (token == "piecewise_constant") return SignalKind::piecewise_constant;
  if (token == "bv_smooth_mix") return SignalKind::bv_smooth_mix;
  return std::nullopt;
}

void SignalSpec::validate() const {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd))
    throw InvalidArgument("noise_sd must be a nonnegative real");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const double b = breakpoints[i];
    if (!(b > 0.0 && b < 1.0)) throw InvalidArgument("breakpoints must lie inside (0, 1)");
    if (i > 0 && !(breakpoints[i - 1] < b))
      throw InvalidArgument("breakpoints must be strictly increasing");
  }
  if (levels.size() != breakpoints.size() + 1)
    throw InvalidArgument("need exactly one more level than breakpoints");
  for (double l : levels)
    if (!std::isfinite(l)) throw InvalidArgument("levels must be finite");
  if (!std::isfinite(smooth_amplitude) || !std::isfinite(smooth_frequency))
    throw InvalidArgument("smooth component must be finite");
}

double SignalSpec::truth(double x) const {
  std::size_t segment = 0;
  while (segment < breakpoints.size() && breakpoints[segment] <= x) ++segment;
  double r = levels[segment];
  if (kind == SignalKind::bv_smooth_mix)
    r += smooth_amplitude * std::sin(2.0 * std::numbers::pi * smooth_frequency * x);
  return r;
}

SimulatedData generate(const SignalSpec& spec) {
  spec.validate();
  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> x(spec.n), y(spec.n), truth(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    x[i] = static_cast<double>(i) / static_cast<double>(spec.n - 1);
    truth[i] = spec.truth(x[i]);
    const double z = normal(engine);
    y[i] = truth[i] + spec.noise_sd * z;
  }
  return {SortedSample(std::move(x), std::move(y)), std::move(truth)};
}

std::vector<ExperimentRow> experiment_mse(const SignalSpec& spec, Algorithm algorithm,
                                          std::size_t k_max) {
  if (k_max == 0) throw InvalidArgument("k_max must be >= 1");
  const SimulatedData data = generate(spec);
  const FitTrace trace = run(data.sample, algorithm, {FixedIterations{k_max}, 0}, {k_max});

  std::vector<ExperimentRow> rows;
  rows.reserve(trace.iterations());
  for (const IterationState& s : trace.states) {
    double sse = 0.0;
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double d = s.y_hat[i] - data.truth[i];
      sse += d * d;
    }
    rows.push_back({s.k, s.rss, sse / static_cast<double>(spec.n), s.level_sets});
  }
  return rows;
}

void write_experiment(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << "k,rss,mse_to_truth,level_sets\n";
  for (const ExperimentRow& r : rows)
    out << r.k << ',' << format_real(r.rss) << ',' << format_real(r.mse_to_truth) << ','
        << r.level_sets << '\n';
}

void write_experiment_long(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << "k,series,value\n";
  for (const ExperimentRow& r : rows) {
    out << r.k << ",rss," << format_real(r.rss) << '\n';
    out << r.k << ",mse_to_truth," << format_real(r.mse_to_truth) << '\n';
    out << r.k << ",level_sets," << r.level_sets << '\n';
  }
}

}  // namespace isoreg
