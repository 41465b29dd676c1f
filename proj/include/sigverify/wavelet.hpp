#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigverify/feature_vector.hpp"
#include "sigverify/image.hpp"

namespace sigverify {

/// Orthonormal two-channel filter bank. `high` is derived from `low` by the
/// quadrature-mirror relation h[n] = (-1)^n l[L-1-n].
class WaveletFilterPair {
 public:
  /// Throws unless sum(l^2) = 1 within 1e-9 and the length is even.
  static WaveletFilterPair from_lowpass(std::vector<double> low);
  static WaveletFilterPair haar();
  static WaveletFilterPair daubechies4();

  std::span<const double> low() const noexcept { return low_; }
  std::span<const double> high() const noexcept { return high_; }
  std::size_t length() const noexcept { return low_.size(); }

 private:
  std::vector<double> low_;
  std::vector<double> high_;
};

/// Real-valued 2-D grid; unlike GrayImage, values are unbounded.
struct Grid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  Grid() = default;
  Grid(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), values(w * h, fill) {}
  static Grid from_image(const GrayImage& img);

  double at(std::size_t row, std::size_t col) const { return values[row * width + col]; }
  double& at(std::size_t row, std::size_t col) { return values[row * width + col]; }
};

struct DwtParams {
  int levels = 3;
  std::size_t canonical_width = 128;
  std::size_t canonical_height = 128;
  int histogram_bins = 12;

  void validate() const;
  std::size_t descriptor_dim() const {
    return static_cast<std::size_t>(3 * levels + 1) * static_cast<std::size_t>(histogram_bins);
  }

  friend bool operator==(const DwtParams&, const DwtParams&) = default;
};

struct DwtOutput {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// Filter and downsample by two, symmetric half-sample extension
/// (x[-1] = x[0], x[N] = x[N-1]); both outputs have length ceil(N/2).
///   approx[p] = sum_n l[n - 2p] x[n],  detail[p] = sum_n h[n - 2p] x[n]
DwtOutput dwt_1d(std::span<const double> signal, const WaveletFilterPair& f);

/// One separable analysis level. Rows are filtered first (horizontal), then
/// columns. LH carries horizontal detail, HL vertical detail.
struct SubbandLevel {
  Grid ll, lh, hl, hh;
};

SubbandLevel dwt2_level(const Grid& img, const WaveletFilterPair& f);
SubbandLevel dwt2_level(const GrayImage& img, const WaveletFilterPair& f);

struct DetailBands {
  Grid lh, hl, hh;
};

struct SubbandPyramid {
  int levels = 0;
  /// details[0] is the finest level (first decomposition).
  std::vector<DetailBands> details;
  Grid approximation;

  std::size_t subband_count() const { return 3 * details.size() + 1; }
};

/// Bilinear resampling with pixel-center alignment.
Grid resample_bilinear(const GrayImage& img, std::size_t width, std::size_t height);

/// Resamples to the canonical size, then decomposes the LL band `levels`
/// times.
SubbandPyramid dwt_pyramid(const GrayImage& img, const DwtParams& p, const WaveletFilterPair& f);

/// Per sub-band histogram of |coefficient| on [0, max |coefficient|],
/// L1-normalized, concatenated as LL, then (LH, HL, HH) from the coarsest
/// level to the finest.
FeatureVector wavelet_descriptor(const GrayImage& img, const DwtParams& p, const WaveletFilterPair& f);

/// Magnitude histogram of one sub-band; an all-zero band puts all mass in
/// bin 0.
std::vector<double> magnitude_histogram(std::span<const double> coeffs, int bins);

}  // namespace sigverify
