#include "sigverify/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigverify/error.hpp"

namespace sigverify {

ScorePair fuse_scores(double lpq_score, double dwt_score) {
  return {lpq_score, dwt_score, (lpq_score + dwt_score) / 2.0};
}

double select_score(const ScorePair& s, ScoreMode mode) {
  switch (mode) {
    case ScoreMode::fused: return s.fused;
    case ScoreMode::lpq_only: return s.lpq_score;
    case ScoreMode::dwt_only: return s.dwt_score;
    case ScoreMode::max_rule: return std::max(s.lpq_score, s.dwt_score);
  }
  return s.fused;
}

ScoreStats score_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::empty_data, "score statistics need at least one value");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

const std::vector<ScorePair>& WriterProfile::threshold_scores() const {
  return config.threshold_stats == ThresholdStats::leave_one_out ? holdout_scores : enrollment_scores;
}

ScoreStats WriterProfile::stats(ScoreMode mode) const {
  const auto& source = threshold_scores();
  std::vector<double> v;
  v.reserve(source.size());
  for (const auto& s : source) v.push_back(select_score(s, mode));
  return score_stats(v);
}

double WriterProfile::threshold(ScoreMode mode, double k) const {
  if (mode == ScoreMode::fused) return mean_m + k * std_sigma;
  const ScoreStats st = stats(mode);
  return st.mean + k * st.std_dev;
}

WriterProfile with_k(WriterProfile profile, double k) {
  profile.k_factor = k;
  profile.threshold_T = profile.mean_m + k * profile.std_sigma;
  return profile;
}

WriterProfile enroll_features(const std::string& writer_id, std::span<const SignatureFeatures> genuine,
                              const PipelineConfig& cfg, double k) {
  cfg.validate();
  if (genuine.size() < 2) {
    throw Error(ErrorCode::insufficient_samples,
                "writer " + writer_id + ": enrollment needs at least 2 genuine signatures, got " +
                    std::to_string(genuine.size()));
  }
  std::vector<FeatureVector> lpq;
  std::vector<FeatureVector> dwt;
  for (const auto& f : genuine) {
    lpq.push_back(f.lpq);
    dwt.push_back(f.dwt);
  }

  WriterProfile p;
  p.writer_id = writer_id;
  p.config = cfg;
  p.lpq_model = train_ocsvm(lpq, cfg.lpq_svm.kernel, cfg.lpq_svm.solver);
  p.dwt_model = train_ocsvm(dwt, cfg.dwt_svm.kernel, cfg.dwt_svm.solver);
  for (const auto& f : genuine) p.enrollment_scores.push_back(score_features(p, f));
  if (cfg.threshold_stats == ThresholdStats::leave_one_out) {
    for (std::size_t held = 0; held < genuine.size(); ++held) {
      std::vector<FeatureVector> lpq_rest;
      std::vector<FeatureVector> dwt_rest;
      for (std::size_t i = 0; i < genuine.size(); ++i) {
        if (i == held) continue;
        lpq_rest.push_back(lpq[i]);
        dwt_rest.push_back(dwt[i]);
      }
      const OcsvmModel lpq_m = train_ocsvm(lpq_rest, cfg.lpq_svm.kernel, cfg.lpq_svm.solver);
      const OcsvmModel dwt_m = train_ocsvm(dwt_rest, cfg.dwt_svm.kernel, cfg.dwt_svm.solver);
      p.holdout_scores.push_back(fuse_scores(probability_score(lpq_m, genuine[held].lpq),
                                             probability_score(dwt_m, genuine[held].dwt)));
    }
  }
  const ScoreStats st = p.stats(ScoreMode::fused);
  p.mean_m = st.mean;
  p.std_sigma = st.std_dev;
  return with_k(std::move(p), k);
}

WriterProfile enroll(const std::string& writer_id, std::span<const GrayImage> genuine,
                     const PipelineConfig& cfg, double k) {
  if (genuine.size() < 2) {
    throw Error(ErrorCode::insufficient_samples,
                "writer " + writer_id + ": enrollment needs at least 2 genuine signatures");
  }
  std::vector<SignatureFeatures> features;
  features.reserve(genuine.size());
  for (std::size_t i = 0; i < genuine.size(); ++i) {
    try {
      features.push_back(extract_features(genuine[i], cfg));
    } catch (const Error& e) {
      throw Error(e.code(), "writer " + writer_id + ", genuine sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return enroll_features(writer_id, features, cfg, k);
}

ScorePair score_features(const WriterProfile& profile, const SignatureFeatures& features) {
  return fuse_scores(probability_score(profile.lpq_model, features.lpq),
                     probability_score(profile.dwt_model, features.dwt));
}

ScorePair score(const WriterProfile& profile, const GrayImage& img) {
  return score_features(profile, extract_features(img, profile.config));
}

Verdict decide_scores(const ScorePair& scores, double threshold, ScoreMode mode) {
  const bool genuine = select_score(scores, mode) >= threshold;
  return {genuine ? Decision::genuine : Decision::forgery, scores, threshold};
}

Verdict verify(const WriterProfile& profile, const GrayImage& img) {
  return decide_scores(score(profile, img), profile.threshold_T);
}

void KSweep::validate() const {
  if (!std::isfinite(k_min) || !std::isfinite(k_max) || k_max < k_min) {
    throw Error(ErrorCode::invalid_argument, "k sweep needs finite k_min <= k_max");
  }
  if (steps < 1) throw Error(ErrorCode::invalid_argument, "k sweep needs at least one step");
  if (steps == 1 && k_max != k_min) throw Error(ErrorCode::invalid_argument, "a one-step sweep needs k_min == k_max");
}

double KSweep::at(int i) const {
  if (steps == 1) return k_min;
  return k_min + (k_max - k_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<DetPoint> sweep_k(std::span<const WriterScores> writers, const KSweep& sweep) {
  sweep.validate();
  if (writers.empty()) throw Error(ErrorCode::empty_data, "k sweep needs at least one writer");
  std::size_t genuine_total = 0;
  std::size_t forgery_total = 0;
  for (const auto& w : writers) {
    if (w.genuine.empty() || w.forgery.empty()) {
      throw Error(ErrorCode::empty_data, "writer " + w.writer_id + " has no genuine or no forgery tuning scores");
    }
    genuine_total += w.genuine.size();
    forgery_total += w.forgery.size();
  }

  std::vector<DetPoint> curve;
  curve.reserve(static_cast<std::size_t>(sweep.steps));
  for (int i = 0; i < sweep.steps; ++i) {
    const double k = sweep.at(i);
    std::size_t false_accept = 0;
    std::size_t false_reject = 0;
    for (const auto& w : writers) {
      const double t = w.mean + k * w.std_dev;
      for (double s : w.genuine) false_reject += s < t ? 1 : 0;
      for (double s : w.forgery) false_accept += s >= t ? 1 : 0;
    }
    curve.push_back({k, static_cast<double>(false_accept) / static_cast<double>(forgery_total),
                     static_cast<double>(false_reject) / static_cast<double>(genuine_total)});
  }
  return curve;
}

Calibration calibrate_k(std::span<const WriterScores> writers, const KSweep& sweep) {
  const auto curve = sweep_k(writers, sweep);
  const DetPoint* best = &curve.front();
  for (const auto& p : curve) {
    if (std::abs(p.far - p.frr) < std::abs(best->far - best->frr)) best = &p;
  }
  return {best->k, best->far, best->frr};
}

}  // namespace sigverify
