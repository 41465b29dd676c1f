#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "sigverify/error.hpp"
#include "sigverify/evaluation.hpp"
#include "sigverify/synth.hpp"

using namespace sigverify;

namespace {

std::vector<Verdict> verdicts(std::size_t genuine, std::size_t forgery) {
  std::vector<Verdict> v(genuine + forgery);
  for (std::size_t i = 0; i < genuine; ++i) v[i].decision = Decision::genuine;
  return v;
}

const std::vector<WriterFeatures>& features() {
  static const std::vector<WriterFeatures> f = [] {
    PipelineConfig cfg;
    return extract_corpus_features(generate_synth_corpus(default_synth_specs(4, 5), 10, 6), cfg);
  }();
  return f;
}

PipelineConfig tuned() {
  PipelineConfig cfg;
  cfg.dwt_svm.kernel.sigma = 0.05;
  return cfg;
}

ProtocolSpec spec(int train, int repeats) {
  ProtocolSpec p;
  p.n_genuine_train = train;
  p.repeats = repeats;
  return p;
}

void check_same(const EvalReport& a, const EvalReport& b) {
  CHECK(a.far == b.far);
  CHECK(a.frr == b.frr);
  CHECK(a.aer == b.aer);
  CHECK(a.k_used == b.k_used);
  CHECK(a.eer == b.eer);
  REQUIRE(a.per_writer.size() == b.per_writer.size());
  for (std::size_t i = 0; i < a.per_writer.size(); ++i) {
    CHECK(a.per_writer[i].writer_id == b.per_writer[i].writer_id);
    CHECK(a.per_writer[i].genuine_rejected == b.per_writer[i].genuine_rejected);
    CHECK(a.per_writer[i].forgery_accepted == b.per_writer[i].forgery_accepted);
  }
  REQUIRE(a.per_repeat.size() == b.per_repeat.size());
  for (std::size_t i = 0; i < a.per_repeat.size(); ++i) {
    CHECK(a.per_repeat[i].far == b.per_repeat[i].far);
    CHECK(a.per_repeat[i].frr == b.per_repeat[i].frr);
    CHECK(a.per_repeat[i].k == b.per_repeat[i].k);
  }
}

}  // namespace

TEST_SUITE("evaluation") {
  TEST_CASE("compute_rates counting") {
    auto g = verdicts(16, 0);
    auto f = verdicts(3, 27);  // 3 forgeries judged genuine
    const EvalReport r = compute_rates(g, f);
    CHECK(r.far == doctest::Approx(0.10));
    CHECK(r.frr == 0.0);
    CHECK(r.aer == doctest::Approx(0.05));
  }

  TEST_CASE("compute_rates reproduces the table arithmetic") {
    const auto g = verdicts(10000 - 1156, 1156);
    const auto f = verdicts(1256, 10000 - 1256);
    const EvalReport r = compute_rates(g, f);
    CHECK(r.far == doctest::Approx(0.1256));
    CHECK(r.frr == doctest::Approx(0.1156));
    CHECK(r.aer == doctest::Approx(0.1206));
  }

  TEST_CASE("compute_rates edge cases") {
    const EvalReport ok = compute_rates(verdicts(5, 0), verdicts(0, 7));
    CHECK(ok.far == 0.0);
    CHECK(ok.frr == 0.0);
    CHECK(ok.aer == 0.0);
    CHECK_THROWS_AS(compute_rates({}, verdicts(0, 1)), Error);
    CHECK_THROWS_AS(compute_rates(verdicts(1, 0), {}), Error);
  }

  TEST_CASE("protocol is deterministic and thread-count independent") {
    const auto& f = features();
    const EvalReport a = run_protocol(f, spec(5, 2), tuned(), ScoreMode::fused, -1.0);
    const EvalReport b = run_protocol(f, spec(5, 2), tuned(), ScoreMode::fused, -1.0);
    check_same(a, b);
    ::setenv("SIGVERIFY_THREADS", "1", 1);
    const EvalReport c = run_protocol(f, spec(5, 2), tuned(), ScoreMode::fused, -1.0);
    ::unsetenv("SIGVERIFY_THREADS");
    check_same(a, c);
  }

  TEST_CASE("writer order does not matter") {
    auto f = features();
    const EvalReport a = run_protocol(f, spec(4, 2), tuned(), ScoreMode::fused, std::nullopt);
    std::reverse(f.begin(), f.end());
    const EvalReport b = run_protocol(f, spec(4, 2), tuned(), ScoreMode::fused, std::nullopt);
    check_same(a, b);
  }

  TEST_CASE("aer is the mean of far and frr on every report") {
    for (ScoreMode mode : {ScoreMode::fused, ScoreMode::lpq_only, ScoreMode::dwt_only, ScoreMode::max_rule}) {
      for (std::optional<double> k : {std::optional<double>(-2.0), std::optional<double>()}) {
        const EvalReport r = run_protocol(features(), spec(4, 2), tuned(), mode, k);
        CHECK(std::abs(r.aer - (r.far + r.frr) / 2) <= 1e-12);
        for (const auto& rr : r.per_repeat) CHECK(std::abs(rr.aer - (rr.far + rr.frr) / 2) <= 1e-12);
        CHECK(r.far >= 0.0);
        CHECK(r.far <= 1.0);
        CHECK(r.frr >= 0.0);
        CHECK(r.frr <= 1.0);
        CHECK(r.eer.has_value() == !k.has_value());
        CHECK(r.per_repeat.size() == 2);
      }
    }
  }

  TEST_CASE("test counts are respected") {
    ProtocolSpec p = spec(4, 1);
    p.n_genuine_test = 3;
    p.n_forgery_test = 2;
    const EvalReport r = run_protocol(features(), p, tuned(), ScoreMode::fused, 0.0);
    for (const auto& w : r.per_writer) {
      CHECK(w.genuine_total == 3);
      CHECK(w.forgery_total == 2);
    }
  }

  TEST_CASE("insufficient samples names the writer") {
    try {
      run_protocol(features(), spec(10, 1), tuned(), ScoreMode::fused, 0.0);
      FAIL("expected insufficient_samples");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::insufficient_samples);
      CHECK(std::string(e.what()).find("w00") != std::string::npos);
    }
    ProtocolSpec bad = spec(1, 1);
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = spec(4, 0);
    CHECK_THROWS_AS(bad.validate(), Error);
  }

  TEST_CASE("det curve extremes") {
    PipelineConfig cfg = tuned();
    std::vector<WriterProfile> profiles;
    for (const auto& w : features()) {
      profiles.push_back(enroll_features(w.writer_id, std::span(w.genuine).first(5), cfg, 0.0));
    }
    std::vector<WriterFeatures> tuning;
    for (const auto& w : features()) {
      tuning.push_back({w.writer_id, {w.genuine.begin() + 5, w.genuine.end()}, w.forgery});
    }
    const auto scores = collect_scores(profiles, tuning, ScoreMode::fused);
    const auto curve = det_curve(scores, KSweep{-1e6, 1e6, 3});
    CHECK(curve.front().frr == 0.0);
    CHECK(curve.front().far == 1.0);
    CHECK(curve.back().frr == 1.0);
    CHECK(curve.back().far == 0.0);
  }
}
