#include "isoreg/cone_projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "isoreg/error.hpp"

namespace isoreg {

WeightedSequence::WeightedSequence(std::vector<double> values)
    : WeightedSequence(values, std::vector<double>(values.size(), 1.0)) {}

WeightedSequence::WeightedSequence(std::vector<double> values,
                                   std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.empty()) throw InvalidInput("empty sequence");
  if (weights_.size() != values_.size()) throw InvalidInput("invalid sample");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !std::isfinite(weights_[i]) || !(weights_[i] > 0.0))
      throw InvalidInput("invalid sample");
  }
}

double WeightedSequence::weighted_mean() const noexcept {
  double sw = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    sw += weights_[i];
    swy += weights_[i] * values_[i];
  }
  return swy / sw;
}

MonotoneFit::MonotoneFit(Direction direction, std::size_t n, std::vector<Block> blocks)
    : direction_(direction), n_(n), blocks_(std::move(blocks)) {}

std::vector<double> MonotoneFit::expand() const {
  std::vector<double> out(n_);
  for (const Block& b : blocks_)
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(b.start), b.length, b.value);
  return out;
}

namespace {

struct PoolBlock {
  std::size_t start;
  std::size_t length;
  double weight;
  double mean;
};

// Stack-based PAVA on (values, weights) for the nondecreasing order. Means are
// pooled incrementally as m1 + (m2 - m1) * w2 / (w1 + w2), which returns m1
// exactly when both means agree, so re-projecting a fit reproduces it bit for
// bit.
std::vector<PoolBlock> pool_nondecreasing(std::span<const double> values,
                                          std::span<const double> weights,
                                          double sign) {
  std::vector<PoolBlock> stack;
  stack.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    stack.push_back({i, 1, weights[i], sign * values[i]});
    while (stack.size() >= 2) {
      PoolBlock& prev = stack[stack.size() - 2];
      const PoolBlock& top = stack.back();
      if (prev.mean < top.mean) break;
      const double total = prev.weight + top.weight;
      prev.mean = prev.mean + (top.mean - prev.mean) * (top.weight / total);
      prev.weight = total;
      prev.length += top.length;
      stack.pop_back();
    }
  }
  return stack;
}

MonotoneFit to_fit(const std::vector<PoolBlock>& pooled, std::size_t n,
                   Direction direction, double sign) {
  std::vector<Block> blocks;
  blocks.reserve(pooled.size());
  for (const PoolBlock& p : pooled) blocks.push_back({p.start, p.length, sign * p.mean});
  return MonotoneFit(direction, n, std::move(blocks));
}

}  // namespace

MonotoneFit project_isotone(const WeightedSequence& s) {
  return to_fit(pool_nondecreasing(s.values(), s.weights(), 1.0), s.size(),
                Direction::nondecreasing, 1.0);
}

MonotoneFit project_antitone(const WeightedSequence& s) {
  return to_fit(pool_nondecreasing(s.values(), s.weights(), -1.0), s.size(),
                Direction::nonincreasing, -1.0);
}

MonotoneFit project(const WeightedSequence& s, Direction direction) {
  return direction == Direction::nondecreasing ? project_isotone(s) : project_antitone(s);
}

std::vector<double> brute_force_projection(const WeightedSequence& s, Direction direction) {
  const std::size_t n = s.size();
  if (n > kOracleMaxSize) throw InvalidArgument("oracle size limit");
  const auto y = s.values();
  const auto w = s.weights();

  std::vector<double> best;
  double best_rss = std::numeric_limits<double>::infinity();
  std::vector<double> candidate(n);

  // Bit j of mask set <=> a block boundary between j and j+1.
  const std::size_t partitions = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask < partitions; ++mask) {
    std::size_t begin = 0;
    bool feasible = true;
    double previous = 0.0;
    for (std::size_t end = 1; end <= n && feasible; ++end) {
      const bool cut = end == n || (mask >> (end - 1)) & 1U;
      if (!cut) continue;
      double sw = 0.0, swy = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        sw += w[i];
        swy += w[i] * y[i];
      }
      const double mean = swy / sw;
      if (begin > 0) {
        feasible = direction == Direction::nondecreasing ? previous <= mean : previous >= mean;
      }
      for (std::size_t i = begin; i < end; ++i) candidate[i] = mean;
      previous = mean;
      begin = end;
    }
    if (!feasible) continue;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) rss += w[i] * (y[i] - candidate[i]) * (y[i] - candidate[i]);
    if (rss < best_rss) {
      best_rss = rss;
      best = candidate;
    }
  }
  return best;
}

bool ProjectionDiagnostic::is_projection(double tol) const noexcept {
  return in_cone && std::abs(complementarity) <= tol && max_generator <= tol;
}

ProjectionDiagnostic check_projection_characterization(std::span<const double> y,
                                                       std::span<const double> u,
                                                       Direction direction,
                                                       std::span<const double> weights) {
  if (y.size() != u.size() || (!weights.empty() && weights.size() != y.size()))
    throw InvalidInput("length mismatch");
  const std::size_t n = y.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = (weights.empty() ? 1.0 : weights[i]) * (y[i] - u[i]);

  ProjectionDiagnostic d;
  for (std::size_t i = 0; i < n; ++i) d.complementarity += r[i] * u[i];

  // Tail sums give <r, s_j>; the full sum is <r, 1>.
  double tail = 0.0;
  double max_step = -std::numeric_limits<double>::infinity();
  const double step_sign = direction == Direction::nondecreasing ? 1.0 : -1.0;
  for (std::size_t j = n; j-- > 0;) {
    tail += r[j];
    if (j > 0) max_step = std::max(max_step, step_sign * tail);
  }
  d.max_generator = std::max({tail, -tail, max_step});
  d.in_cone = is_in_cone(u, direction, 0.0);
  return d;
}

bool is_in_cone(std::span<const double> v, Direction direction, double tol) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double diff = v[i] - v[i - 1];
    const double signed_diff = direction == Direction::nondecreasing ? diff : -diff;
    if (signed_diff < -tol) return false;
  }
  return true;
}

}  // namespace isoreg
