#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigverify/feature_vector.hpp"

namespace sigverify {

enum class KernelKind { rbf, linear, polynomial, sigmoid_kernel };

/// rbf:             exp(-|x - y|^2 / (2 sigma^2))
/// linear:          <x, y>
/// polynomial:      (scale <x, y> + coef)^degree
/// sigmoid_kernel:  tanh(scale <x, y> + coef)
struct KernelParams {
  KernelKind kind = KernelKind::rbf;
  double sigma = 0.01;
  double degree = 3.0;
  double coef = 0.0;
  double scale = 1.0;

  void validate() const;

  friend bool operator==(const KernelParams&, const KernelParams&) = default;
};

struct SolverConfig {
  double nu = 0.01;
  double tolerance = 1e-6;
  long max_iterations = 100000;

  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

double kernel_eval(const FeatureVector& x, const FeatureVector& y, const KernelParams& k);

/// Trained nu-one-class SVM in the sum(alpha) = 1, 0 <= alpha <= 1/(nu n)
/// scaling. Every training point is kept; points with alpha = 0 simply do
/// not contribute.
struct OcsvmModel {
  std::vector<FeatureVector> support_points;
  std::vector<double> alphas;
  double offset_b = 0.0;
  KernelParams kernel;
  double nu = 0.0;
  std::size_t train_count = 0;

  double upper_bound() const { return 1.0 / (nu * static_cast<double>(train_count)); }
  std::size_t dim() const { return support_points.empty() ? 0 : support_points.front().dim(); }
};

struct TrainStats {
  long iterations = 0;
  double final_violation = 0.0;
  double objective = 0.0;
  /// Dual objective after initialisation and after every update.
  std::vector<double> objective_history;
};

struct TrainResult {
  OcsvmModel model;
  TrainStats stats;
};

/// Solves min 1/2 a^T K a  s.t.  sum a = 1, 0 <= a_i <= 1/(nu n) by
/// two-coordinate updates on the maximal violating pair (lowest index wins
/// ties), starting from the uniform point a_i = 1/n.
TrainResult train_ocsvm_detailed(std::span<const FeatureVector> data, const KernelParams& k,
                                 const SolverConfig& s);

OcsvmModel train_ocsvm(std::span<const FeatureVector> data, const KernelParams& k, const SolverConfig& s);

/// sum_i alpha_i K(x_i, x) - b.
double decision_value(const OcsvmModel& m, const FeatureVector& x);

/// sign(decision_value) with 0 mapped to +1.
int decide(const OcsvmModel& m, const FeatureVector& x);

/// Overflow-free logistic function.
double sigmoid(double v);

double probability_score(const OcsvmModel& m, const FeatureVector& x);

/// 1/2 a^T K a for the given multipliers over `data`.
double dual_objective(std::span<const FeatureVector> data, std::span<const double> alphas, const KernelParams& k);

}  // namespace sigverify
