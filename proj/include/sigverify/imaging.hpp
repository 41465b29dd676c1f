#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sigverify/image.hpp"

namespace sigverify {

struct PreprocessConfig {
  double gaussian_sigma = 1.0;
  int gaussian_radius = 3;
  int crop_margin = 2;

  /// Throws ErrorCode::invalid_argument unless sigma > 0, radius >= 1,
  /// radius >= ceil(2 sigma) and margin >= 0.
  void validate() const;

  friend bool operator==(const PreprocessConfig&, const PreprocessConfig&) = default;
};

struct OtsuResult {
  int threshold = 0;
  /// Set when the histogram holds a single intensity; `threshold` is then
  /// that intensity.
  bool degenerate = false;
};

struct BinarizeResult {
  BinaryImage mask;
  int threshold = 0;
  bool degenerate = false;
};

/// Intensity histogram bin of a pixel value (nearest integer, clamped).
int intensity_bin(double value);

std::array<std::size_t, 256> intensity_histogram(const GrayImage& img);

/// Threshold t maximizing the between-class variance of {<= t} vs {> t};
/// the smallest maximizer wins. Comparisons are exact (integer arithmetic).
OtsuResult otsu_threshold(const GrayImage& img);

/// Ink = pixels whose intensity bin is <= the Otsu threshold. A degenerate
/// image yields an all-background mask with `degenerate` set.
BinarizeResult binarize(const GrayImage& img);

/// Normalized 1-D Gaussian taps of length 2*radius + 1.
std::vector<double> gaussian_kernel_1d(double sigma, int radius);

/// Separable truncated-Gaussian smoothing with edge replication; output is
/// clamped to [0, 255].
GrayImage gaussian_filter(const GrayImage& img, const PreprocessConfig& cfg);

struct InkBox {
  std::size_t row0, col0, row1, col1;  // inclusive bounds
};

/// Throws ErrorCode::blank_signature when the mask has no ink.
InkBox ink_bounding_box(const BinaryImage& mask);

GrayImage crop_to_ink(const GrayImage& img, const BinaryImage& mask, int margin);

/// binarize -> gaussian_filter (grayscale) -> crop_to_ink with the mask.
GrayImage preprocess(const GrayImage& img, const PreprocessConfig& cfg);

}  // namespace sigverify
