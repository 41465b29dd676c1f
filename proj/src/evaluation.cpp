#include "sigverify/evaluation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "sigverify/error.hpp"
#include "sigverify/parallel.hpp"
#include "sigverify/rng.hpp"

namespace sigverify {

namespace {

// Outcome of one writer in one repeat.
struct WriterTrial {
  ScoreStats stats;
  std::vector<double> genuine_scores;
  std::vector<double> forgery_scores;
};

WriterTrial run_writer_trial(const WriterFeatures& writer, const ProtocolSpec& spec, const PipelineConfig& cfg,
                             ScoreMode mode, int repeat) {
  SplitMix64 rng(mix_seed(mix_seed(spec.rng_seed, static_cast<std::uint64_t>(repeat)), hash_id(writer.writer_id)));

  std::vector<std::size_t> genuine(writer.genuine.size());
  std::iota(genuine.begin(), genuine.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(genuine));
  std::vector<std::size_t> forgery(writer.forgery.size());
  std::iota(forgery.begin(), forgery.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(forgery));

  const auto n_train = static_cast<std::size_t>(spec.n_genuine_train);
  const std::size_t n_test =
      spec.n_genuine_test > 0 ? static_cast<std::size_t>(spec.n_genuine_test) : genuine.size() - n_train;
  const std::size_t n_forg =
      spec.n_forgery_test > 0 ? static_cast<std::size_t>(spec.n_forgery_test) : forgery.size();

  std::vector<SignatureFeatures> train;
  for (std::size_t i = 0; i < n_train; ++i) train.push_back(writer.genuine[genuine[i]]);
  const WriterProfile profile = enroll_features(writer.writer_id, train, cfg, 0.0);

  WriterTrial trial;
  trial.stats = profile.stats(mode);
  for (std::size_t i = n_train; i < n_train + n_test; ++i) {
    trial.genuine_scores.push_back(select_score(score_features(profile, writer.genuine[genuine[i]]), mode));
  }
  for (std::size_t i = 0; i < n_forg; ++i) {
    trial.forgery_scores.push_back(select_score(score_features(profile, writer.forgery[forgery[i]]), mode));
  }
  return trial;
}

void check_corpus(std::span<const WriterFeatures> corpus, const ProtocolSpec& spec) {
  if (corpus.empty()) throw Error(ErrorCode::empty_data, "protocol needs at least one writer");
  for (const auto& w : corpus) {
    const auto need_genuine = static_cast<std::size_t>(spec.n_genuine_train + std::max(spec.n_genuine_test, 1));
    const auto need_forgery = static_cast<std::size_t>(std::max(spec.n_forgery_test, 1));
    if (w.genuine.size() < need_genuine || w.forgery.size() < need_forgery) {
      throw Error(ErrorCode::insufficient_samples,
                  "writer " + w.writer_id + " has " + std::to_string(w.genuine.size()) + " genuine / " +
                      std::to_string(w.forgery.size()) + " forgery samples; protocol needs at least " +
                      std::to_string(need_genuine) + " / " + std::to_string(need_forgery));
    }
  }
}

}  // namespace

void ProtocolSpec::validate() const {
  if (n_genuine_train < 2) throw Error(ErrorCode::invalid_argument, "n_genuine_train must be >= 2");
  if (n_genuine_test < 0 || n_forgery_test < 0) {
    throw Error(ErrorCode::invalid_argument, "test sample counts must be >= 0");
  }
  if (repeats < 1) throw Error(ErrorCode::invalid_argument, "repeats must be >= 1");
}

EvalReport compute_rates(std::span<const Verdict> genuine, std::span<const Verdict> forgery) {
  if (genuine.empty() || forgery.empty()) {
    throw Error(ErrorCode::empty_data, "error rates need at least one genuine and one forgery verdict");
  }
  const auto rejected = std::count_if(genuine.begin(), genuine.end(),
                                      [](const Verdict& v) { return v.decision == Decision::forgery; });
  const auto accepted = std::count_if(forgery.begin(), forgery.end(),
                                      [](const Verdict& v) { return v.decision == Decision::genuine; });
  EvalReport r;
  r.far = static_cast<double>(accepted) / static_cast<double>(forgery.size());
  r.frr = static_cast<double>(rejected) / static_cast<double>(genuine.size());
  r.aer = (r.far + r.frr) / 2.0;
  return r;
}

EvalReport run_protocol(std::span<const WriterFeatures> corpus, const ProtocolSpec& spec,
                        const PipelineConfig& cfg, ScoreMode mode, std::optional<double> k,
                        const KSweep& sweep) {
  spec.validate();
  cfg.validate();
  sweep.validate();
  check_corpus(corpus, spec);

  // Aggregation runs in writer-id order so results do not depend on the
  // order writers were supplied in.
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return corpus[a].writer_id < corpus[b].writer_id; });

  EvalReport report;
  report.mode = mode;
  for (std::size_t idx : order) report.per_writer.push_back({corpus[idx].writer_id, 0, 0, 0, 0});

  double eer_sum = 0.0;
  for (int repeat = 0; repeat < spec.repeats; ++repeat) {
    std::vector<WriterTrial> trials(order.size());
    parallel_for(order.size(), [&](std::size_t i) {
      trials[i] = run_writer_trial(corpus[order[i]], spec, cfg, mode, repeat);
    });

    double k_repeat = 0.0;
    if (k) {
      k_repeat = *k;
    } else {
      std::vector<WriterScores> tuning;
      for (std::size_t i = 0; i < order.size(); ++i) {
        tuning.push_back({corpus[order[i]].writer_id, trials[i].stats.mean, trials[i].stats.std_dev,
                          trials[i].genuine_scores, trials[i].forgery_scores});
      }
      const Calibration cal = calibrate_k(tuning, sweep);
      k_repeat = cal.k;
      eer_sum += (cal.far + cal.frr) / 2.0;
    }

    std::size_t g_total = 0, g_rej = 0, f_total = 0, f_acc = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double t = trials[i].stats.mean + k_repeat * trials[i].stats.std_dev;
      auto& w = report.per_writer[i];
      for (double s : trials[i].genuine_scores) {
        ++w.genuine_total;
        ++g_total;
        if (s < t) {
          ++w.genuine_rejected;
          ++g_rej;
        }
      }
      for (double s : trials[i].forgery_scores) {
        ++w.forgery_total;
        ++f_total;
        if (s >= t) {
          ++w.forgery_accepted;
          ++f_acc;
        }
      }
    }
    RepeatRates rr;
    rr.repeat = repeat;
    rr.k = k_repeat;
    rr.far = static_cast<double>(f_acc) / static_cast<double>(f_total);
    rr.frr = static_cast<double>(g_rej) / static_cast<double>(g_total);
    rr.aer = (rr.far + rr.frr) / 2.0;
    report.per_repeat.push_back(rr);
  }

  const auto n = static_cast<double>(spec.repeats);
  for (const auto& rr : report.per_repeat) {
    report.far += rr.far;
    report.frr += rr.frr;
    report.k_used += rr.k;
  }
  report.far /= n;
  report.frr /= n;
  report.k_used /= n;
  report.aer = (report.far + report.frr) / 2.0;
  if (!k) report.eer = eer_sum / n;
  return report;
}

EvalReport run_protocol(const Corpus& corpus, const ProtocolSpec& spec, const PipelineConfig& cfg,
                        ScoreMode mode, std::optional<double> k, const KSweep& sweep) {
  spec.validate();
  for (const auto& w : corpus.writers) {
    if (w.genuine.size() < static_cast<std::size_t>(spec.n_genuine_train + std::max(spec.n_genuine_test, 1)) ||
        w.forgery.size() < static_cast<std::size_t>(std::max(spec.n_forgery_test, 1))) {
      throw Error(ErrorCode::insufficient_samples, "writer " + w.writer_id + " has too few samples for the protocol");
    }
  }
  const auto features = extract_corpus_features(corpus, cfg);
  return run_protocol(features, spec, cfg, mode, k, sweep);
}

std::vector<WriterScores> collect_scores(std::span<const WriterProfile> profiles,
                                         std::span<const WriterFeatures> tuning, ScoreMode mode) {
  std::map<std::string, const WriterProfile*> by_id;
  for (const auto& p : profiles) by_id[p.writer_id] = &p;
  std::vector<WriterScores> out(tuning.size());
  parallel_for(tuning.size(), [&](std::size_t i) {
    const auto& w = tuning[i];
    const auto it = by_id.find(w.writer_id);
    if (it == by_id.end()) throw Error(ErrorCode::invalid_argument, "no profile for writer " + w.writer_id);
    const WriterProfile& p = *it->second;
    const ScoreStats st = p.stats(mode);
    WriterScores ws{w.writer_id, st.mean, st.std_dev, {}, {}};
    for (const auto& f : w.genuine) ws.genuine.push_back(select_score(score_features(p, f), mode));
    for (const auto& f : w.forgery) ws.forgery.push_back(select_score(score_features(p, f), mode));
    out[i] = std::move(ws);
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.writer_id < b.writer_id; });
  return out;
}

std::vector<DetPoint> det_curve(std::span<const WriterScores> writers, const KSweep& sweep) {
  return sweep_k(writers, sweep);
}

}  // namespace sigverify
