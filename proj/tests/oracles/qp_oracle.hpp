#pragma once

// Dense QP: min 1/2 a^T K a over {sum a = 1, 0 <= a <= C}, by accelerated
// projected gradient with an exact Euclidean projection onto the capped
// simplex.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

inline std::vector<double> project_capped_simplex(const std::vector<double>& v, double cap) {
  // Find tau with sum clip(v - tau, 0, cap) = 1 by bisection.
  double lo = *std::min_element(v.begin(), v.end()) - cap - 1.0;
  double hi = *std::max_element(v.begin(), v.end()) + 1.0;
  auto mass = [&](double tau) {
    double s = 0;
    for (double x : v) s += std::clamp(x - tau, 0.0, cap);
    return s;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > 1.0 ? lo : hi) = mid;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i] - 0.5 * (lo + hi), 0.0, cap);
  return out;
}

inline double quad_objective(const std::vector<std::vector<double>>& k, const std::vector<double>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += a[i] * a[j] * k[i][j];
  return 0.5 * s;
}

inline std::vector<double> solve_capped_simplex_qp(const std::vector<std::vector<double>>& k, double cap,
                                                   long max_iter = 1000000) {
  const std::size_t n = k.size();
  // Lipschitz bound from the Gershgorin row sums.
  double lip = 0;
  for (const auto& row : k) {
    double s = 0;
    for (double x : row) s += std::abs(x);
    lip = std::max(lip, s);
  }
  const double step = 1.0 / lip;
  std::vector<double> a(n, 1.0 / static_cast<double>(n)), y = a, prev = a;
  double t = 1.0;
  for (long it = 0; it < max_iter; ++it) {
    std::vector<double> g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i] += k[i][j] * y[j];
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] - step * g[i];
    a = project_capped_simplex(v, cap);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = a[i] + ((t - 1.0) / t_next) * (a[i] - prev[i]);
      change = std::max(change, std::abs(a[i] - prev[i]));
    }
    // Restart momentum when the objective goes up.
    if (quad_objective(k, a) > quad_objective(k, prev)) {
      y = a;
      t = 1.0;
    } else {
      t = t_next;
    }
    prev = a;
    if (change < 1e-15 && it > 100) break;
  }
  return a;
}

}  // namespace oracle
