#pragma once

#include <cstddef>
#include <vector>

#include "isoreg/cone_projection.hpp"

namespace isoreg {

/// Raw rows that were pooled into one design point.
struct TieGroup {
  std::size_t index = 0;      // position in the sorted sample
  std::size_t raw_rows = 0;   // number of raw rows merged
};

/// Design points in strictly increasing order with responses and positive
/// weights. After tie merging, w_i is the summed input weight of the raw rows
/// pooled into point i and y_i their weighted mean.
class SortedSample {
 public:
  /// Unit weights.
  SortedSample(std::vector<double> x, std::vector<double> y);
  SortedSample(std::vector<double> x, std::vector<double> y, std::vector<double> w,
               std::size_t raw_rows = 0, std::vector<TieGroup> ties = {});

  /// Equispaced design on [0, 1] (a single point sits at 0).
  static SortedSample on_unit_grid(std::vector<double> y);

  std::size_t size() const noexcept { return x_.size(); }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  const std::vector<double>& w() const noexcept { return w_; }
  std::size_t raw_rows() const noexcept { return raw_rows_; }
  const std::vector<TieGroup>& ties() const noexcept { return ties_; }

  double total_weight() const noexcept;
  double weighted_mean() const noexcept;
  bool unit_weights() const noexcept;

  /// Weighted view of an arbitrary vector over this sample's design.
  WeightedSequence weighted(std::vector<double> values) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> w_;
  std::size_t raw_rows_;
  std::vector<TieGroup> ties_;
};

}  // namespace isoreg
