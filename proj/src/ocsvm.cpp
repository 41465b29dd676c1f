#include "sigverify/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sigverify/error.hpp"

namespace sigverify {

namespace {

double dot(const FeatureVector& x, const FeatureVector& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

// Row-major dense Gram matrix.
std::vector<double> gram_matrix(std::span<const FeatureVector> data, const KernelParams& k) {
  const std::size_t n = data.size();
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = kernel_eval(data[i], data[j], k);
      q[i * n + j] = v;
      q[j * n + i] = v;
    }
  }
  return q;
}

}  // namespace

void KernelParams::validate() const {
  if (kind == KernelKind::rbf && !(sigma > 0.0 && std::isfinite(sigma))) {
    throw Error(ErrorCode::invalid_argument, "RBF kernel sigma must be > 0");
  }
}

void SolverConfig::validate() const {
  if (!(nu > 0.0 && nu <= 1.0)) throw Error(ErrorCode::invalid_argument, "nu must lie in (0, 1]");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "solver tolerance must be > 0");
  if (max_iterations < 1) throw Error(ErrorCode::invalid_argument, "max_iterations must be >= 1");
}

double kernel_eval(const FeatureVector& x, const FeatureVector& y, const KernelParams& k) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "kernel arguments differ in dimension (" + std::to_string(x.dim()) + " vs " +
                    std::to_string(y.dim()) + ")");
  }
  switch (k.kind) {
    case KernelKind::rbf: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i) {
        const double d = x[i] - y[i];
        d2 += d * d;
      }
      return std::exp(-d2 / (2.0 * k.sigma * k.sigma));
    }
    case KernelKind::linear:
      return dot(x, y);
    case KernelKind::polynomial:
      return std::pow(k.scale * dot(x, y) + k.coef, k.degree);
    case KernelKind::sigmoid_kernel:
      return std::tanh(k.scale * dot(x, y) + k.coef);
  }
  return 0.0;
}

TrainResult train_ocsvm_detailed(std::span<const FeatureVector> data, const KernelParams& k,
                                 const SolverConfig& s) {
  k.validate();
  s.validate();
  if (data.empty()) throw Error(ErrorCode::empty_data, "cannot train a one-class SVM on empty data");
  const std::size_t dim = data.front().dim();
  for (const auto& x : data) {
    if (x.dim() != dim) throw Error(ErrorCode::dimension_mismatch, "training vectors differ in dimension");
  }

  const std::size_t n = data.size();
  const double upper = 1.0 / (s.nu * static_cast<double>(n));
  const std::vector<double> q = gram_matrix(data, k);
  std::vector<double> alpha(n, 1.0 / static_cast<double>(n));
  std::vector<double> grad(n, 0.0);

  auto rebuild_gradient = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < n; ++j) g += q[i * n + j] * alpha[j];
      grad[i] = g;
    }
  };
  auto objective = [&] {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += alpha[i] * grad[i];
    return 0.5 * v;
  };
  // Maximal violating pair: up = argmin G over alpha < C, down = argmax G
  // over alpha > 0. Returns the violation G[down] - G[up].
  auto select_pair = [&](std::size_t& up, std::size_t& down) {
    double g_min = std::numeric_limits<double>::infinity();
    double g_max = -std::numeric_limits<double>::infinity();
    up = n;
    down = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] < upper && grad[t] < g_min) {
        g_min = grad[t];
        up = t;
      }
      if (alpha[t] > 0.0 && grad[t] > g_max) {
        g_max = grad[t];
        down = t;
      }
    }
    if (up == n || down == n) return 0.0;
    return g_max - g_min;
  };

  rebuild_gradient();
  TrainResult result;
  result.stats.objective_history.push_back(objective());

  long iter = 0;
  double violation = 0.0;
  for (;;) {
    std::size_t i = 0;
    std::size_t j = 0;
    violation = select_pair(i, j);
    if (violation <= s.tolerance) {
      // Confirm against a freshly accumulated gradient before stopping.
      rebuild_gradient();
      violation = select_pair(i, j);
      if (violation <= s.tolerance) break;
    }
    if (iter >= s.max_iterations) {
      throw ConvergenceError("one-class SVM did not converge in " + std::to_string(s.max_iterations) +
                                 " iterations (KKT violation " + std::to_string(violation) + ")",
                             violation);
    }
    ++iter;

    double eta = q[i * n + i] + q[j * n + j] - 2.0 * q[i * n + j];
    if (eta <= 0.0) eta = 1e-12;
    const double room_up = upper - alpha[i];
    const double room_down = alpha[j];
    double delta = std::min({violation / eta, room_up, room_down});
    alpha[i] = delta == room_up ? upper : alpha[i] + delta;
    alpha[j] = delta == room_down ? 0.0 : alpha[j] - delta;
    for (std::size_t t = 0; t < n; ++t) grad[t] += delta * (q[t * n + i] - q[t * n + j]);
    result.stats.objective_history.push_back(objective());
  }

  // Offset: average gradient over free multipliers, otherwise the midpoint
  // of the KKT-feasible interval [max G over alpha = C, min G over alpha = 0].
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper_b = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < upper) {
      free_sum += grad[t];
      ++free_count;
    } else if (alpha[t] >= upper) {
      lower = std::max(lower, grad[t]);
    } else {
      upper_b = std::min(upper_b, grad[t]);
    }
  }
  double b = 0.0;
  if (free_count > 0) {
    b = free_sum / static_cast<double>(free_count);
  } else if (std::isfinite(lower) && std::isfinite(upper_b)) {
    b = 0.5 * (lower + upper_b);
  } else {
    b = std::isfinite(lower) ? lower : upper_b;
  }

  result.stats.iterations = iter;
  result.stats.final_violation = violation;
  result.stats.objective = objective();
  result.model.support_points.assign(data.begin(), data.end());
  result.model.alphas = std::move(alpha);
  result.model.offset_b = b;
  result.model.kernel = k;
  result.model.nu = s.nu;
  result.model.train_count = n;
  return result;
}

OcsvmModel train_ocsvm(std::span<const FeatureVector> data, const KernelParams& k, const SolverConfig& s) {
  return train_ocsvm_detailed(data, k, s).model;
}

double decision_value(const OcsvmModel& m, const FeatureVector& x) {
  if (x.dim() != m.dim()) throw Error(ErrorCode::dimension_mismatch, "query dimension differs from the model");
  double acc = 0.0;
  for (std::size_t i = 0; i < m.support_points.size(); ++i) {
    if (m.alphas[i] != 0.0) acc += m.alphas[i] * kernel_eval(m.support_points[i], x, m.kernel);
  }
  return acc - m.offset_b;
}

int decide(const OcsvmModel& m, const FeatureVector& x) { return decision_value(m, x) >= 0.0 ? 1 : -1; }

double sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

double probability_score(const OcsvmModel& m, const FeatureVector& x) { return sigmoid(decision_value(m, x)); }

double dual_objective(std::span<const FeatureVector> data, std::span<const double> alphas, const KernelParams& k) {
  if (data.size() != alphas.size()) throw Error(ErrorCode::dimension_mismatch, "alpha count differs from data");
  double v = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.size(); ++j) v += alphas[i] * alphas[j] * kernel_eval(data[i], data[j], k);
  }
  return 0.5 * v;
}

}  // namespace sigverify
