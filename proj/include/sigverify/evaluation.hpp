#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigverify/corpus.hpp"
#include "sigverify/verifier.hpp"

namespace sigverify {

struct ProtocolSpec {
  int n_genuine_train = 8;
  /// 0 means every genuine sample not used for training.
  int n_genuine_test = 0;
  /// 0 means every forgery of the writer.
  int n_forgery_test = 0;
  int repeats = 10;
  std::uint64_t rng_seed = 20190101;

  void validate() const;

  friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;
};

struct WriterBreakdown {
  std::string writer_id;
  std::size_t genuine_total = 0;
  std::size_t genuine_rejected = 0;
  std::size_t forgery_total = 0;
  std::size_t forgery_accepted = 0;
};

struct RepeatRates {
  int repeat = 0;
  double k = 0.0;
  double far = 0.0;
  double frr = 0.0;
  double aer = 0.0;
};

struct EvalReport {
  double far = 0.0;
  double frr = 0.0;
  double aer = 0.0;
  std::optional<double> eer;
  double k_used = 0.0;
  ScoreMode mode = ScoreMode::fused;
  std::vector<WriterBreakdown> per_writer;  // sorted by writer_id
  std::vector<RepeatRates> per_repeat;
};

/// FAR = accepted forgeries / forgeries, FRR = rejected genuine / genuine,
/// AER = (FAR + FRR) / 2.
EvalReport compute_rates(std::span<const Verdict> genuine, std::span<const Verdict> forgery);

/// Repeated random-split protocol over precomputed features. With a fixed
/// `k`, every writer's threshold is m + k sigma of the chosen score over its
/// enrollment set. Without one, each repeat calibrates k on its own test
/// scores (equal-error operating point) and `eer` is reported.
EvalReport run_protocol(std::span<const WriterFeatures> corpus, const ProtocolSpec& spec,
                        const PipelineConfig& cfg, ScoreMode mode, std::optional<double> k,
                        const KSweep& sweep = {});

EvalReport run_protocol(const Corpus& corpus, const ProtocolSpec& spec, const PipelineConfig& cfg,
                        ScoreMode mode, std::optional<double> k, const KSweep& sweep = {});

/// Scores tuning samples against each writer's profile. Profiles and
/// features are matched by writer_id.
std::vector<WriterScores> collect_scores(std::span<const WriterProfile> profiles,
                                         std::span<const WriterFeatures> tuning, ScoreMode mode);

/// Full FAR/FRR sweep behind calibrate_k.
std::vector<DetPoint> det_curve(std::span<const WriterScores> writers, const KSweep& sweep = {});

}  // namespace sigverify
