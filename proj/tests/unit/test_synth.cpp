#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sigverify/error.hpp"
#include "sigverify/imaging.hpp"
#include "sigverify/parallel.hpp"
#include "sigverify/rng.hpp"
#include "sigverify/synth.hpp"

using namespace sigverify;

TEST_SUITE("synth") {
  TEST_CASE("splitmix64 reference values") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFULL);
    CHECK(g.next() == 0x6E789E6AA1B965F4ULL);
  }

  TEST_CASE("rng helpers") {
    SplitMix64 g(7);
    for (int i = 0; i < 1000; ++i) {
      const double u = g.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      REQUIRE(g.below(7) < 7);
    }
    std::vector<int> v(20);
    std::iota(v.begin(), v.end(), 0);
    g.shuffle(std::span(v));
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 20; ++i) CHECK(sorted[i] == i);
    CHECK(hash_id("w001") != hash_id("w002"));
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  }

  TEST_CASE("parallel_for covers every index and rethrows the lowest failure") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    try {
      parallel_for(50, [](std::size_t i) {
        if (i == 7 || i == 31) throw std::runtime_error("fail " + std::to_string(i));
      });
      FAIL("expected exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "fail 7");
    }
    ::setenv("SIGVERIFY_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    ::unsetenv("SIGVERIFY_THREADS");
    CHECK(worker_count() >= 1);
  }

  TEST_CASE("generation is deterministic") {
    const auto specs = default_synth_specs(3, 17);
    const Corpus a = generate_synth_corpus(specs, 4, 3);
    const Corpus b = generate_synth_corpus(specs, 4, 3);
    REQUIRE(a.writers.size() == 3);
    for (std::size_t w = 0; w < 3; ++w) {
      CHECK(a.writers[w].genuine == b.writers[w].genuine);
      CHECK(a.writers[w].forgery == b.writers[w].forgery);
      CHECK(a.writers[w].genuine.size() == 4);
      CHECK(a.writers[w].forgery.size() == 3);
    }
    CHECK(a.writers[0].writer_id == "w000");
    CHECK(a.writers[2].writer_id == "w002");
  }

  TEST_CASE("samples are light pages with dark ink and survive preprocessing") {
    const SynthWriterSpec spec = default_synth_specs(1, 4).front();
    const GrayImage img = render_synth_sample(spec, spec.jitter_genuine, 1);
    CHECK(img.width() == 256);
    CHECK(img.height() == 128);
    for (double v : img.pixels()) REQUIRE(v == std::round(v));
    const auto bin = binarize(img);
    CHECK_FALSE(bin.degenerate);
    CHECK(bin.mask.ink_count() > 100);
    CHECK(bin.mask.ink_count() < img.size() / 3);
    CHECK_NOTHROW(preprocess(img, PreprocessConfig{}));
  }

  TEST_CASE("writers and samples differ") {
    const auto specs = default_synth_specs(2, 8);
    CHECK_FALSE(render_synth_sample(specs[0], 1.0, 1) == render_synth_sample(specs[1], 1.0, 1));
    CHECK_FALSE(render_synth_sample(specs[0], 1.0, 1) == render_synth_sample(specs[0], 1.0, 2));
  }

  TEST_CASE("writer spec validation") {
    SynthWriterSpec s;
    s.stroke_count = 0;
    CHECK_THROWS_AS(s.validate(), Error);
    CHECK_THROWS_AS(generate_synth_corpus({s}, 2, 2), Error);
    s = SynthWriterSpec{};
    s.jitter_forgery = s.jitter_genuine;  // allowed: the chance-level control
    CHECK_NOTHROW(s.validate());
    s.jitter_genuine = -1.0;
    CHECK_THROWS_AS(s.validate(), Error);
    CHECK_THROWS_AS(generate_synth_corpus({}, 2, 2), Error);
    CHECK_THROWS_AS(generate_synth_corpus({SynthWriterSpec{}}, 0, 2), Error);
  }
}
