#pragma once

// Difference operator, Hadamard product, total variation and the discrete
// Jordan minimum-variation decomposition y = u* + b*.

#include <span>
#include <vector>

namespace isoreg {

/// (z_2 - z_1, ..., z_n - z_{n-1}). Throws InvalidInput("needs two points") for n < 2.
std::vector<double> delta(std::span<const double> z);

std::vector<double> hadamard(std::span<const double> a, std::span<const double> b);

/// V(z) = sum |z_{i+1} - z_i|; zero for a single point.
double total_variation(std::span<const double> z);

/// max |delta(u) o delta(b)| <= tol.
bool singular_variations(std::span<const double> u, std::span<const double> b, double tol);

/// A nondecreasing part u and a nonincreasing part b with singular variations,
/// mean(u) = reference_mean and mean(b) = 0.
struct DecompositionPair {
  std::vector<double> u;
  std::vector<double> b;
  double reference_mean = 0.0;
};

/// Cumulative positive and negative increments of y, shifted so that
/// mean(u) = mean(y) and mean(b) = 0. Means are weighted when weights are
/// given. Zero increments go to neither part.
DecompositionPair jordan_decompose(std::span<const double> y,
                                   std::span<const double> weights = {});

}  // namespace isoreg
