#include <doctest.h>

#include "sigverify/evaluation.hpp"
#include "sigverify/synth.hpp"

using namespace sigverify;

namespace {

PipelineConfig config() {
  PipelineConfig cfg;
  cfg.dwt_svm.kernel.sigma = 0.05;
  return cfg;
}

ProtocolSpec protocol(int n_train, int repeats) {
  ProtocolSpec p;
  p.n_genuine_train = n_train;
  p.repeats = repeats;
  return p;
}

std::vector<WriterFeatures> corpus(std::uint64_t seed, double jitter_forgery, int writers = 10) {
  auto specs = default_synth_specs(writers, seed);
  for (auto& s : specs) s.jitter_forgery = jitter_forgery;
  return extract_corpus_features(generate_synth_corpus(specs, 24, 30), config());
}

}  // namespace

TEST_SUITE("trends") {
  TEST_CASE("default synthetic corpus is separable") {
    const EvalReport r = run_protocol(corpus(11, 4.0), protocol(8, 5), config(), ScoreMode::fused, std::nullopt);
    MESSAGE("fused AER " << r.aer);
    CHECK(r.aer < 0.25);
  }

  TEST_CASE("AER does not grow with more training signatures") {
    const auto f = corpus(12, 4.0);
    double previous = 1.0;
    for (int n : {4, 8, 12}) {
      const EvalReport r = run_protocol(f, protocol(n, 10), config(), ScoreMode::fused, std::nullopt);
      MESSAGE("N_g " << n << " AER " << r.aer);
      CHECK(r.aer <= previous + 0.02);
      previous = r.aer;
    }
  }

  TEST_CASE("larger forgery jitter never makes verification harder") {
    for (std::uint64_t seed : {13, 14}) {
      double previous = 1.0;
      for (double jitter : {1.0, 2.0, 4.0, 8.0}) {
        const EvalReport r =
            run_protocol(corpus(seed, jitter, 6), protocol(8, 4), config(), ScoreMode::fused, std::nullopt);
        MESSAGE("seed " << seed << " jitter " << jitter << " AER " << r.aer);
        CHECK(r.aer <= previous + 0.02);
        previous = r.aer;
      }
    }
  }

  TEST_CASE("indistinguishable classes sit at chance") {
    // 10 writers x (16 genuine + 30 forgery) x 4 repeats = 1840 decisions.
    const auto f = corpus(15, 1.0);
    for (double k : {-3.0, -1.0, 0.0}) {
      const EvalReport r = run_protocol(f, protocol(8, 4), config(), ScoreMode::fused, k);
      MESSAGE("k " << k << " AER " << r.aer);
      CHECK(r.aer >= 0.4);
      CHECK(r.aer <= 0.6);
    }
  }
}
