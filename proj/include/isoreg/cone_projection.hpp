#pragma once

// Euclidean projections onto the monotone cones
//   C+ = { u : u_1 <= ... <= u_n }   and   C- = -C+
// computed with weighted pool-adjacent-violators, together with an
// exhaustive-partition oracle and predicates that certify a projection.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace isoreg {

enum class Direction { nondecreasing, nonincreasing };

/// Values with strictly positive weights. Construction validates:
/// n >= 1, finite values, finite positive weights.
class WeightedSequence {
 public:
  /// Unit weights.
  explicit WeightedSequence(std::vector<double> values);
  WeightedSequence(std::vector<double> values, std::vector<double> weights);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double weighted_mean() const noexcept;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

struct Block {
  std::size_t start = 0;
  std::size_t length = 0;
  double value = 0.0;

  friend bool operator==(const Block&, const Block&) = default;
};

/// A monotone vector stored as its level sets. Blocks partition [0, n) in
/// order, and adjacent block values are strictly ordered along direction.
class MonotoneFit {
 public:
  MonotoneFit(Direction direction, std::size_t n, std::vector<Block> blocks);

  Direction direction() const noexcept { return direction_; }
  std::size_t size() const noexcept { return n_; }
  const std::vector<Block>& blocks() const& noexcept { return blocks_; }
  std::vector<Block> blocks() && noexcept { return std::move(blocks_); }

  std::vector<double> expand() const;

 private:
  Direction direction_;
  std::size_t n_;
  std::vector<Block> blocks_;
};

/// Weighted isotonic regression: argmin over C+ of sum w_i (y_i - u_i)^2.
MonotoneFit project_isotone(const WeightedSequence& s);

/// Weighted antitonic regression over C-. Computed as -iso(-y): PAVA runs on
/// the negated values and the block values are negated back.
MonotoneFit project_antitone(const WeightedSequence& s);

MonotoneFit project(const WeightedSequence& s, Direction direction);

inline constexpr std::size_t kOracleMaxSize = 12;

/// Exhaustive oracle: enumerates all 2^(n-1) partitions into consecutive
/// blocks, keeps the monotone-feasible pooled fits and returns the one with
/// minimal weighted RSS. Throws InvalidArgument("oracle size limit") for
/// n > kOracleMaxSize.
std::vector<double> brute_force_projection(const WeightedSequence& s,
                                           Direction direction);

/// Residual quantities of the variational characterization of a projection
/// onto a closed convex cone C:
///   <y - u, u> = 0   and   <y - u, v> <= 0 for every v in C.
/// The second condition is checked on the finite generator set of C
/// ({+1, -1, s_1..s_{n-1}} for C+, with s_j = (0..0, 1..1) starting at j;
/// negated steps for C-). Inner products are weighted when weights are given.
struct ProjectionDiagnostic {
  double complementarity = 0.0;  // <y - u, u>
  double max_generator = 0.0;    // max over generators of <y - u, v>
  bool in_cone = false;          // u itself lies in C (tol 0)

  bool is_projection(double tol) const noexcept;
};

ProjectionDiagnostic check_projection_characterization(
    std::span<const double> y, std::span<const double> u, Direction direction,
    std::span<const double> weights = {});

/// True iff every consecutive difference respects direction within -tol.
bool is_in_cone(std::span<const double> v, Direction direction, double tol = 0.0);

}  // namespace isoreg
