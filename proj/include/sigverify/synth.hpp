#pragma once

#include <cstdint>
#include <vector>

#include "sigverify/corpus.hpp"

namespace sigverify {

/// Generator parameters for one synthetic writer. Genuine and forged samples
/// come from the same perturbation process and differ only in its scale, so
/// jitter_forgery == jitter_genuine yields indistinguishable classes.
struct SynthWriterSpec {
  std::uint64_t writer_seed = 1;
  int stroke_count = 4;
  /// Bound on per-control-point displacement (pixels); also scales tremor.
  double jitter_genuine = 1.0;
  double jitter_forgery = 4.0;
  int canvas_width = 256;
  int canvas_height = 128;

  void validate() const;
};

/// `writers` specs with seeds derived from `seed` and the default 4x jitter
/// ratio.
std::vector<SynthWriterSpec> default_synth_specs(int writers, std::uint64_t seed);

/// Renders one sample. `jitter` selects the perturbation scale.
GrayImage render_synth_sample(const SynthWriterSpec& spec, double jitter, std::uint64_t sample_seed);

/// Writer ids are "w000", "w001", ... in spec order.
Corpus generate_synth_corpus(const std::vector<SynthWriterSpec>& specs, int n_genuine, int n_forgery);

}  // namespace sigverify
