#include "isoreg/sample.hpp"

#include <cmath>
#include <utility>

#include "isoreg/error.hpp"

namespace isoreg {

SortedSample::SortedSample(std::vector<double> x, std::vector<double> y)
    : SortedSample(x, std::move(y), std::vector<double>(x.size(), 1.0)) {}

SortedSample::SortedSample(std::vector<double> x, std::vector<double> y, std::vector<double> w,
                           std::size_t raw_rows, std::vector<TieGroup> ties)
    : x_(std::move(x)),
      y_(std::move(y)),
      w_(std::move(w)),
      raw_rows_(raw_rows == 0 ? x_.size() : raw_rows),
      ties_(std::move(ties)) {
  if (x_.empty()) throw InvalidInput("empty sequence");
  if (y_.size() != x_.size() || w_.size() != x_.size()) throw InvalidInput("length mismatch");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]) || !std::isfinite(w_[i]) || !(w_[i] > 0.0))
      throw InvalidInput("invalid sample");
    if (i > 0 && !(x_[i - 1] < x_[i])) throw InvalidInput("abscissas not strictly increasing");
  }
}

SortedSample SortedSample::on_unit_grid(std::vector<double> y) {
  const std::size_t n = y.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n && n > 1; ++i)
    x[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return SortedSample(std::move(x), std::move(y));
}

double SortedSample::total_weight() const noexcept {
  double s = 0.0;
  for (double wi : w_) s += wi;
  return s;
}

double SortedSample::weighted_mean() const noexcept {
  double sw = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    sw += w_[i];
    swy += w_[i] * y_[i];
  }
  return swy / sw;
}

bool SortedSample::unit_weights() const noexcept {
  for (double wi : w_)
    if (wi != 1.0) return false;
  return true;
}

WeightedSequence SortedSample::weighted(std::vector<double> values) const {
  return WeightedSequence(std::move(values), w_);
}

}  // namespace isoreg
