#pragma once

// CSV ingestion of samples and CSV/JSON serialization of fits, traces and
// selection reports. Reals are written with 17 significant digits so that a
// write/read cycle reproduces every double exactly.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "isoreg/model_selection.hpp"
#include "isoreg/sample.hpp"
#include "isoreg/variation.hpp"

namespace isoreg {

struct LoadOptions {
  /// Reject repeated abscissas instead of pooling them.
  bool strict_ties = false;
};

/// Reads a comma-separated table with a header naming columns x and y (and
/// optionally w; other columns are ignored). Rows are sorted by x and rows
/// sharing an abscissa are merged into their weighted mean with summed
/// weight. LF and CRLF line endings are accepted.
SortedSample load_sample(std::istream& in, const LoadOptions& options = {});
SortedSample load_sample_file(const std::string& path, const LoadOptions& options = {});

/// "%.17g".
std::string format_real(double value);

/// Columns x,y,w,u_hat,b_hat,y_hat,residual.
void write_fit(const DecompositionPair& pair, std::span<const double> y_hat,
               const SortedSample& sample, std::ostream& out);

/// The chosen state of a fit. Throws InvalidArgument on an empty trace.
void write_fit(const FitResult& result, std::ostream& out);

/// Columns x,y,w (and truth when given).
void write_sample(const SortedSample& sample, std::ostream& out,
                  std::span<const double> truth = {});

struct TraceWriteOptions {
  bool include_vectors = true;
  int indent = 2;
};

/// {algorithm, n, stop_reason, iterations: [{k, rss, level_sets,
/// criterion_value?, excluded?, u_hat?, b_hat?, y_hat?}], criterion?, chosen_k?}
void write_trace(const FitTrace& trace, const SelectionReport* report, std::ostream& out,
                 const TraceWriteOptions& options = {});

/// Tidy long-format table k,series,value with series rss, level_sets and,
/// when a report is given, criterion.
void write_trace_long(const FitTrace& trace, const SelectionReport* report, std::ostream& out);

}  // namespace isoreg
