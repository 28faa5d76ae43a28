#pragma once

// Seeded generation of noisy bounded-variation signals on an equispaced
// design and a per-iteration diagnostics harness.
//
// Noise is drawn from std::mt19937_64 seeded with SignalSpec::seed through
// std::normal_distribution<double>; samples are bit-identical for a given
// seed within one build (the normal transform is library-defined).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "isoreg/iterative_fit.hpp"
#include "isoreg/sample.hpp"

namespace isoreg {

enum class SignalKind {
  piecewise_constant,  // right-continuous steps
  bv_smooth_mix,       // steps plus amplitude * sin(2 pi frequency x)
};

std::string_view to_string(SignalKind k) noexcept;
std::optional<SignalKind> parse_signal_kind(std::string_view token) noexcept;

struct SignalSpec {
  SignalKind kind = SignalKind::piecewise_constant;
  std::vector<double> breakpoints;  // strictly increasing, inside (0, 1)
  std::vector<double> levels;       // breakpoints.size() + 1 values
  double smooth_amplitude = 0.0;
  double smooth_frequency = 1.0;
  double noise_sd = 0.0;
  std::size_t n = 100;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on an inconsistent spec.
  void validate() const;
  /// Noiseless regression function r(x).
  double truth(double x) const;
};

struct SimulatedData {
  SortedSample sample;
  std::vector<double> truth;
};

/// x_i = i / (n - 1), y_i = r(x_i) + noise_sd * z_i.
SimulatedData generate(const SignalSpec& spec);

struct ExperimentRow {
  std::size_t k = 0;
  double rss = 0.0;
  double mse_to_truth = 0.0;
  std::size_t level_sets = 0;
};

/// Fits the generated sample for k = 1..k_max and reports per-k diagnostics.
/// Rows stop early when the iteration reaches a fixed point.
std::vector<ExperimentRow> experiment_mse(const SignalSpec& spec, Algorithm algorithm,
                                          std::size_t k_max);

/// Columns k,rss,mse_to_truth,level_sets.
void write_experiment(const std::vector<ExperimentRow>& rows, std::ostream& out);

/// Long format k,series,value.
void write_experiment_long(const std::vector<ExperimentRow>& rows, std::ostream& out);

}  // namespace isoreg
