#pragma once

#include <span>
#include <string>
#include <vector>

#include "sigverify/image.hpp"
#include "sigverify/ocsvm.hpp"
#include "sigverify/pipeline.hpp"

namespace sigverify {

inline constexpr double kDefaultK = 2.18;

struct ScorePair {
  double lpq_score = 0.0;
  double dwt_score = 0.0;
  double fused = 0.0;

  friend bool operator==(const ScorePair&, const ScorePair&) = default;
};

/// fused = (lpq + dwt) / 2.
ScorePair fuse_scores(double lpq_score, double dwt_score);

/// Which score drives the threshold. `max_rule` exists only as an
/// evaluation baseline.
enum class ScoreMode { fused, lpq_only, dwt_only, max_rule };

double select_score(const ScorePair& s, ScoreMode mode);

struct ScoreStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population (divide by n)
};

ScoreStats score_stats(std::span<const double> values);

struct WriterProfile {
  std::string writer_id;
  OcsvmModel lpq_model;
  OcsvmModel dwt_model;
  double mean_m = 0.0;
  double std_sigma = 0.0;
  double k_factor = kDefaultK;
  double threshold_T = 0.0;
  PipelineConfig config;
  /// Scores of the enrollment images against the trained models, in
  /// enrollment order.
  std::vector<ScorePair> enrollment_scores;
  /// Leave-one-out scores of the enrollment images (empty under
  /// ThresholdStats::in_sample).
  std::vector<ScorePair> holdout_scores;

  /// Scores that define m and sigma under the frozen config.
  const std::vector<ScorePair>& threshold_scores() const;
  ScoreStats stats(ScoreMode mode) const;
  /// m + k sigma for the statistics of `mode`.
  double threshold(ScoreMode mode, double k) const;
};

/// Recomputes m, sigma, T for a new k (threshold_T = m + k sigma).
WriterProfile with_k(WriterProfile profile, double k);

enum class Decision { genuine, forgery };

struct Verdict {
  Decision decision = Decision::forgery;
  ScorePair scores;
  double threshold_used = 0.0;
};

/// Trains both one-class SVMs on genuine features only. Needs >= 2 samples.
WriterProfile enroll_features(const std::string& writer_id, std::span<const SignatureFeatures> genuine,
                              const PipelineConfig& cfg, double k);

/// Image-level enrollment. A blank sample raises ErrorCode::blank_signature
/// naming its index.
WriterProfile enroll(const std::string& writer_id, std::span<const GrayImage> genuine,
                     const PipelineConfig& cfg, double k);

ScorePair score_features(const WriterProfile& profile, const SignatureFeatures& features);
ScorePair score(const WriterProfile& profile, const GrayImage& img);

/// Genuine iff the selected score >= threshold (inclusive).
Verdict decide_scores(const ScorePair& scores, double threshold, ScoreMode mode = ScoreMode::fused);
Verdict verify(const WriterProfile& profile, const GrayImage& img);

/// Tuning scores of one writer with its enrollment statistics.
struct WriterScores {
  std::string writer_id;
  double mean = 0.0;
  double std_dev = 0.0;
  std::vector<double> genuine;
  std::vector<double> forgery;
};

struct KSweep {
  double k_min = -5.0;
  double k_max = 5.0;
  int steps = 1001;

  void validate() const;
  double at(int i) const;
};

struct DetPoint {
  double k = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

/// Pooled FAR/FRR at every grid k, thresholds m_w + k sigma_w per writer.
std::vector<DetPoint> sweep_k(std::span<const WriterScores> writers, const KSweep& sweep);

struct Calibration {
  double k = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

/// Grid k minimizing |FAR - FRR|; ties go to the smaller k.
Calibration calibrate_k(std::span<const WriterScores> writers, const KSweep& sweep);

}  // namespace sigverify
