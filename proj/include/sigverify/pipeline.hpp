#pragma once

#include "sigverify/feature_vector.hpp"
#include "sigverify/image.hpp"
#include "sigverify/imaging.hpp"
#include "sigverify/lpq.hpp"
#include "sigverify/ocsvm.hpp"
#include "sigverify/wavelet.hpp"

namespace sigverify {

enum class WaveletFamily { haar, daubechies4 };

/// Which enrollment scores define a writer's m and sigma.
/// `in_sample` scores each enrollment image against models trained on all of
/// them; `leave_one_out` scores image i against models trained without it.
enum class ThresholdStats { leave_one_out, in_sample };

WaveletFilterPair make_filter(WaveletFamily family);

struct OcsvmConfig {
  KernelParams kernel;
  SolverConfig solver;

  friend bool operator==(const OcsvmConfig&, const OcsvmConfig&) = default;
};

/// Everything needed to turn an image into scores. A WriterProfile freezes
/// a copy at enrollment.
struct PipelineConfig {
  PreprocessConfig preprocess;
  LpqParams lpq;
  DwtParams dwt;
  WaveletFamily wavelet = WaveletFamily::haar;
  OcsvmConfig lpq_svm;
  OcsvmConfig dwt_svm;
  ThresholdStats threshold_stats = ThresholdStats::leave_one_out;

  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

struct SignatureFeatures {
  FeatureVector lpq;
  FeatureVector dwt;
};

/// Preprocesses once, then computes both descriptors.
SignatureFeatures extract_features(const GrayImage& img, const PipelineConfig& cfg);

}  // namespace sigverify
