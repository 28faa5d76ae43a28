#include "isoreg/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "isoreg/error.hpp"

namespace isoreg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    cells.push_back(trim(line.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, std::size_t row, std::string_view column) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
    throw InvalidInput("non-numeric cell in row " + std::to_string(row) + ", column " +
                       std::string(column));
  return value;
}

struct RawRow {
  double x, y, w;
};

}  // namespace

SortedSample load_sample(std::istream& in, const LoadOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("zero rows");
  std::string_view header = line;
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  const auto names = split(header);
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
  };
  const auto cx = column("x");
  const auto cy = column("y");
  const auto cw = column("w");
  if (!cx) throw InvalidInput("missing column x");
  if (!cy) throw InvalidInput("missing column y");

  std::vector<RawRow> rows;
  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != names.size())
      throw InvalidInput("row " + std::to_string(row_number) + " has " +
                         std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(names.size()));
    RawRow r{parse_cell(cells[*cx], row_number, "x"), parse_cell(cells[*cy], row_number, "y"), 1.0};
    if (cw) {
      r.w = parse_cell(cells[*cw], row_number, "w");
      if (!(r.w > 0.0))
        throw InvalidInput("non-positive weight in row " + std::to_string(row_number));
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw InvalidInput("zero rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const RawRow& a, const RawRow& b) { return a.x < b.x; });

  std::vector<double> x, y, w;
  std::vector<TieGroup> ties;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    double sw = 0.0, swy = 0.0;
    while (j < rows.size() && rows[j].x == rows[i].x) {
      sw += rows[j].w;
      swy += rows[j].w * rows[j].y;
      ++j;
    }
    if (j - i > 1) {
      if (options.strict_ties)
        throw InvalidInput("tied abscissa x=" + format_real(rows[i].x));
      ties.push_back({x.size(), j - i});
    }
    x.push_back(rows[i].x);
    y.push_back(j - i == 1 ? rows[i].y : swy / sw);
    w.push_back(sw);
    i = j;
  }
  return SortedSample(std::move(x), std::move(y), std::move(w), rows.size(), std::move(ties));
}

SortedSample load_sample_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return load_sample(in, options);
}

std::string format_real(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_fit(const DecompositionPair& pair, std::span<const double> y_hat,
               const SortedSample& sample, std::ostream& out) {
  const std::size_t n = sample.size();
  if (pair.u.size() != n || pair.b.size() != n || y_hat.size() != n)
    throw InvalidInput("length mismatch");
  out << "x,y,w,u_hat,b_hat,y_hat,residual\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << format_real(sample.x()[i]) << ',' << format_real(sample.y()[i]) << ','
        << format_real(sample.w()[i]) << ',' << format_real(pair.u[i]) << ','
        << format_real(pair.b[i]) << ',' << format_real(y_hat[i]) << ','
        << format_real(sample.y()[i] - y_hat[i]) << '\n';
  }
  if (!out) throw Error("write failure");
}

void write_fit(const FitResult& result, std::ostream& out) {
  if (result.trace.states.empty() || result.chosen_k == 0) throw InvalidArgument("empty trace");
  const IterationState& s = result.chosen();
  if (!s.has_vectors()) throw InvalidArgument("state vectors not retained");
  DecompositionPair pair{s.u_hat, s.b_hat, result.trace.sample.weighted_mean()};
  write_fit(pair, s.y_hat, result.trace.sample, out);
}

void write_sample(const SortedSample& sample, std::ostream& out, std::span<const double> truth) {
  if (!truth.empty() && truth.size() != sample.size()) throw InvalidInput("length mismatch");
  const bool with_w = !sample.unit_weights();
  out << "x,y" << (with_w ? ",w" : "") << (truth.empty() ? "" : ",truth") << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out << format_real(sample.x()[i]) << ',' << format_real(sample.y()[i]);
    if (with_w) out << ',' << format_real(sample.w()[i]);
    if (!truth.empty()) out << ',' << format_real(truth[i]);
    out << '\n';
  }
  if (!out) throw Error("write failure");
}

namespace {

std::map<std::size_t, const SelectionEntry*> index_entries(const SelectionReport* report) {
  std::map<std::size_t, const SelectionEntry*> by_k;
  if (report)
    for (const SelectionEntry& e : report->entries) by_k[e.k] = &e;
  return by_k;
}

}  // namespace

void write_trace(const FitTrace& trace, const SelectionReport* report, std::ostream& out,
                 const TraceWriteOptions& options) {
  using nlohmann::ordered_json;
  const auto by_k = index_entries(report);

  ordered_json doc;
  doc["algorithm"] = to_string(trace.algorithm);
  doc["n"] = trace.sample.size();
  doc["stop_reason"] = to_string(trace.stop_reason);
  ordered_json iterations = ordered_json::array();
  for (const IterationState& s : trace.states) {
    ordered_json it;
    it["k"] = s.k;
    it["rss"] = s.rss;
    it["level_sets"] = s.level_sets;
    if (const auto e = by_k.find(s.k); e != by_k.end()) {
      if (e->second->value)
        it["criterion_value"] = *e->second->value;
      else
        it["excluded"] = true;
    }
    if (options.include_vectors && s.has_vectors()) {
      it["u_hat"] = s.u_hat;
      it["b_hat"] = s.b_hat;
      it["y_hat"] = s.y_hat;
    }
    iterations.push_back(std::move(it));
  }
  doc["iterations"] = std::move(iterations);
  if (report) {
    doc["criterion"] = to_string(report->criterion);
    doc["grid"] = report->grid;
    doc["chosen_k"] = report->chosen_k;
  }
  out << doc.dump(options.indent) << '\n';
  if (!out) throw Error("write failure");
}

void write_trace_long(const FitTrace& trace, const SelectionReport* report, std::ostream& out) {
  const auto by_k = index_entries(report);
  out << "k,series,value\n";
  for (const IterationState& s : trace.states) {
    out << s.k << ",rss," << format_real(s.rss) << '\n';
    out << s.k << ",level_sets," << s.level_sets << '\n';
    if (const auto e = by_k.find(s.k); e != by_k.end() && e->second->value)
      out << s.k << ",criterion," << format_real(*e->second->value) << '\n';
  }
  if (!out) throw Error("write failure");
}

}  // namespace isoreg
