#include "isoreg/variation.hpp"

#include <algorithm>
#include <cmath>

#include "isoreg/error.hpp"

namespace isoreg {

std::vector<double> delta(std::span<const double> z) {
  if (z.size() < 2) throw InvalidInput("needs two points");
  std::vector<double> d(z.size() - 1);
  for (std::size_t i = 0; i + 1 < z.size(); ++i) d[i] = z[i + 1] - z[i];
  return d;
}

std::vector<double> hadamard(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("length mismatch");
  std::vector<double> out(a.size());
  std::transform(a.begin(), a.end(), b.begin(), out.begin(), std::multiplies<>{});
  return out;
}

double total_variation(std::span<const double> z) {
  double v = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) v += std::abs(z[i] - z[i - 1]);
  return v;
}

bool singular_variations(std::span<const double> u, std::span<const double> b, double tol) {
  if (u.size() != b.size()) throw InvalidInput("length mismatch");
  if (u.size() < 2) throw InvalidInput("needs two points");
  for (double p : hadamard(delta(u), delta(b)))
    if (std::abs(p) > tol) return false;
  return true;
}

DecompositionPair jordan_decompose(std::span<const double> y, std::span<const double> weights) {
  if (y.empty()) throw InvalidInput("empty sequence");
  if (!weights.empty() && weights.size() != y.size()) throw InvalidInput("length mismatch");
  const std::size_t n = y.size();
  auto weight = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

  DecompositionPair pair;
  pair.u.assign(n, 0.0);
  pair.b.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double step = y[i] - y[i - 1];
    pair.u[i] = pair.u[i - 1] + std::max(step, 0.0);
    pair.b[i] = pair.b[i - 1] + std::min(step, 0.0);
  }

  double sw = 0.0, sy = 0.0, su = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += weight(i);
    sy += weight(i) * y[i];
    su += weight(i) * pair.u[i];
    sb += weight(i) * pair.b[i];
  }
  pair.reference_mean = sy / sw;
  const double shift_u = pair.reference_mean - su / sw;
  const double shift_b = -sb / sw;
  for (std::size_t i = 0; i < n; ++i) {
    pair.u[i] += shift_u;
    pair.b[i] += shift_b;
  }
  return pair;
}

}  // namespace isoreg
