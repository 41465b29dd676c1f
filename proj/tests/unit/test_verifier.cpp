#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sigverify/error.hpp"
#include "sigverify/synth.hpp"
#include "sigverify/verifier.hpp"

using namespace sigverify;

namespace {

const Corpus& small_corpus() {
  static const Corpus c = generate_synth_corpus(default_synth_specs(2, 99), 9, 4);
  return c;
}

std::span<const GrayImage> first(const std::vector<GrayImage>& v, std::size_t n) { return std::span(v).first(n); }

PipelineConfig tuned() {
  PipelineConfig cfg;
  cfg.dwt_svm.kernel.sigma = 0.05;
  return cfg;
}

ScoreStats independent_stats(const std::vector<ScorePair>& scores) {
  double m = 0;
  for (const auto& s : scores) m += s.fused;
  m /= static_cast<double>(scores.size());
  double v = 0;
  for (const auto& s : scores) v += (s.fused - m) * (s.fused - m);
  return {m, std::sqrt(v / static_cast<double>(scores.size()))};
}

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("fusion arithmetic") {
    const ScorePair s = fuse_scores(0.8, 0.6);
    CHECK(s.fused == (0.8 + 0.6) / 2.0);
    CHECK(s.fused == doctest::Approx(0.7));
    CHECK(fuse_scores(0.37, 0.37).fused == 0.37);
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double a = u(gen), b = u(gen);
      const double f = fuse_scores(a, b).fused;
      REQUIRE(f >= std::min(a, b));
      REQUIRE(f <= std::max(a, b));
    }
  }

  TEST_CASE("decision boundary is inclusive") {
    const ScorePair s = fuse_scores(0.6, 0.4);
    CHECK(decide_scores(s, s.fused).decision == Decision::genuine);
    CHECK(decide_scores(s, std::nextafter(s.fused, 1.0)).decision == Decision::forgery);
    CHECK(decide_scores(s, s.fused).threshold_used == s.fused);
    CHECK(decide_scores(s, 0.55, ScoreMode::lpq_only).decision == Decision::genuine);
    CHECK(decide_scores(s, 0.55, ScoreMode::dwt_only).decision == Decision::forgery);
  }

  TEST_CASE("population standard deviation") {
    const std::vector<double> v{1.0, 3.0};
    const ScoreStats s = score_stats(v);
    CHECK(s.mean == 2.0);
    CHECK(s.std_dev == 1.0);
    CHECK_THROWS_AS(score_stats(std::vector<double>{}), Error);
  }

  TEST_CASE("defaults") {
    CHECK(kDefaultK == 2.18);
    const PipelineConfig cfg;
    CHECK(cfg.lpq_svm.solver.nu == 0.01);
    CHECK(cfg.dwt_svm.solver.nu == 0.01);
    CHECK(cfg.lpq_svm.kernel.sigma == 0.01);
    CHECK(cfg.dwt_svm.kernel.sigma == 0.01);
  }

  TEST_CASE("enroll with k = 2.18 sets T = m + k sigma from the enrollment scores") {
    const auto& w = small_corpus().writers[0];
    for (ThresholdStats mode : {ThresholdStats::leave_one_out, ThresholdStats::in_sample}) {
      PipelineConfig cfg = tuned();
      cfg.threshold_stats = mode;
      const WriterProfile p = enroll(w.writer_id, first(w.genuine, 8), cfg, 2.18);
      const auto& pool = mode == ThresholdStats::in_sample ? p.enrollment_scores : p.holdout_scores;
      REQUIRE(pool.size() == 8);
      CHECK(p.enrollment_scores.size() == 8);
      const ScoreStats st = independent_stats(pool);
      CHECK(p.mean_m == doctest::Approx(st.mean).epsilon(1e-14));
      CHECK(p.std_sigma == doctest::Approx(st.std_dev).epsilon(1e-12));
      CHECK(p.threshold_T == p.mean_m + 2.18 * p.std_sigma);
      CHECK(p.k_factor == 2.18);
    }
  }

  TEST_CASE("k = 0 gives T = m and with_k recomputes T") {
    const auto& w = small_corpus().writers[1];
    const WriterProfile p = enroll(w.writer_id, first(w.genuine, 5), tuned(), 0.0);
    CHECK(p.threshold_T == p.mean_m);
    const WriterProfile q = with_k(p, -1.5);
    CHECK(q.threshold_T == q.mean_m + -1.5 * q.std_sigma);
    CHECK(q.k_factor == -1.5);
  }

  TEST_CASE("duplicated enrollment images give sigma = 0") {
    const auto& w = small_corpus().writers[0];
    const std::vector<GrayImage> same(4, w.genuine[0]);
    for (ThresholdStats mode : {ThresholdStats::leave_one_out, ThresholdStats::in_sample}) {
      PipelineConfig cfg;
      cfg.threshold_stats = mode;
      const WriterProfile p = enroll(w.writer_id, same, cfg, 2.18);
      CHECK(p.std_sigma == 0.0);
      CHECK(p.threshold_T == p.mean_m);
    }
  }

  TEST_CASE("an enrollment image scores at least the minimum enrollment score") {
    const auto& w = small_corpus().writers[0];
    const WriterProfile p = enroll(w.writer_id, first(w.genuine, 8), tuned(), 2.18);
    double lo = 1.0;
    for (const auto& s : p.enrollment_scores) lo = std::min(lo, s.fused);
    for (std::size_t i = 0; i < 8; ++i) {
      const ScorePair s = score(p, w.genuine[i]);
      CHECK(s.fused >= lo);
      CHECK(s == p.enrollment_scores[i]);
    }
  }

  TEST_CASE("random noise is rejected") {
    const auto& w = small_corpus().writers[0];
    const WriterProfile p = enroll(w.writer_id, first(w.genuine, 8), PipelineConfig{}, 2.18);
    std::mt19937_64 gen(42);
    for (int i = 0; i < 5; ++i) {
      const Verdict v = verify(p, testing::random_image(gen, 200, 100));
      CHECK(v.decision == Decision::forgery);
      CHECK(v.scores.fused < p.threshold_T);
    }
  }

  TEST_CASE("decision monotonicity") {
    const auto& w = small_corpus().writers[1];
    const WriterProfile p = enroll(w.writer_id, first(w.genuine, 6), tuned(), -1.0);
    std::vector<Verdict> all;
    for (const auto& img : w.genuine) all.push_back(verify(p, img));
    for (const auto& img : w.forgery) all.push_back(verify(p, img));
    for (const auto& a : all)
      for (const auto& b : all)
        if (a.scores.fused >= b.scores.fused && b.decision == Decision::genuine) CHECK(a.decision == Decision::genuine);
  }

  TEST_CASE("enrollment is deterministic") {
    const auto& w = small_corpus().writers[0];
    const WriterProfile a = enroll(w.writer_id, first(w.genuine, 6), tuned(), 2.18);
    const WriterProfile b = enroll(w.writer_id, first(w.genuine, 6), tuned(), 2.18);
    CHECK(a.lpq_model.alphas == b.lpq_model.alphas);
    CHECK(a.dwt_model.alphas == b.dwt_model.alphas);
    CHECK(a.lpq_model.offset_b == b.lpq_model.offset_b);
    CHECK(a.threshold_T == b.threshold_T);
    CHECK(a.holdout_scores == b.holdout_scores);
  }

  TEST_CASE("enroll errors") {
    const auto& w = small_corpus().writers[0];
    try {
      enroll(w.writer_id, first(w.genuine, 1), PipelineConfig{}, 2.18);
      FAIL("expected insufficient_samples");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::insufficient_samples);
    }
    std::vector<GrayImage> imgs(first(w.genuine, 3).begin(), first(w.genuine, 3).end());
    imgs.emplace_back(200, 100, 255.0);
    try {
      enroll("wx", imgs, PipelineConfig{}, 2.18);
      FAIL("expected blank_signature");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::blank_signature);
      CHECK(std::string(e.what()).find("wx") != std::string::npos);
      CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
  }

  TEST_CASE("calibrate: two-point example") {
    const std::vector<WriterScores> ws{{"w", 0.0, 1.0, {0.9}, {-0.9}}};
    const Calibration c = calibrate_k(ws, KSweep{});
    CHECK(c.k == doctest::Approx(-0.89).epsilon(1e-12));
    CHECK(c.k > -0.9);
    CHECK(c.far == 0.0);
    CHECK(c.frr == 0.0);
    for (const DetPoint& p : sweep_k(ws, KSweep{})) {
      if (p.k > -0.9 && p.k < 0.9) {
        CHECK(p.far == 0.0);
        CHECK(p.frr == 0.0);
      }
    }
  }

  TEST_CASE("calibrate: symmetric scores match brute force") {
    const double m = 0.45, s = 0.02;
    const std::vector<double> g{0.3, 0.8, 1.1, 1.7, 2.4};
    WriterScores w{"w", m, s, {}, {}};
    for (double x : g) {
      w.genuine.push_back(m + s * x);
      w.forgery.push_back(m - s * x);
    }
    const std::vector<WriterScores> ws{w};
    const KSweep sweep;
    // Brute force over the grid.
    double best_gap = 2.0, best_k = 0.0;
    for (int i = 0; i < sweep.steps; ++i) {
      const double k = sweep.at(i);
      const double t = m + k * s;
      double fa = 0, fr = 0;
      for (double x : w.genuine) fr += x < t;
      for (double x : w.forgery) fa += x >= t;
      const double gap = std::abs(fa / 5 - fr / 5);
      if (gap < best_gap) {
        best_gap = gap;
        best_k = k;
      }
    }
    const Calibration c = calibrate_k(ws, sweep);
    CHECK(c.k == best_k);
    CHECK(c.k > -0.3);
    CHECK(c.k <= 0.3);
  }

  TEST_CASE("sweep monotonicity on random scores") {
    std::mt19937_64 gen(43);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<WriterScores> ws;
    for (int w = 0; w < 6; ++w) {
      WriterScores s{"w" + std::to_string(w), 0.5 + 0.01 * n(gen), 0.02 + 0.005 * std::abs(n(gen)), {}, {}};
      for (int i = 0; i < 10; ++i) s.genuine.push_back(0.5 + 0.02 * n(gen));
      for (int i = 0; i < 12; ++i) s.forgery.push_back(0.45 + 0.03 * n(gen));
      ws.push_back(s);
    }
    const auto curve = sweep_k(ws, KSweep{});
    REQUIRE(curve.size() == 1001);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      REQUIRE(curve[i].k > curve[i - 1].k);
      REQUIRE(curve[i].far <= curve[i - 1].far);
      REQUIRE(curve[i].frr >= curve[i - 1].frr);
    }
    const Calibration c = calibrate_k(ws, KSweep{});
    double min_gap = 1.0;
    for (const auto& p : curve) min_gap = std::min(min_gap, std::abs(p.far - p.frr));
    CHECK(std::abs(c.far - c.frr) == min_gap);
  }

  TEST_CASE("sweep validation") {
    KSweep bad{1.0, -1.0, 10};
    CHECK_THROWS_AS(bad.validate(), Error);
    const std::vector<WriterScores> empty_forgery{{"w", 0, 1, {0.5}, {}}};
    CHECK_THROWS_AS(sweep_k(empty_forgery, KSweep{}), Error);
  }
}
