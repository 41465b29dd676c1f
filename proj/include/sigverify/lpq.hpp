#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sigverify/feature_vector.hpp"
#include "sigverify/image.hpp"

namespace sigverify {

enum class BorderPolicy { skip_border, replicate };

struct LpqParams {
  int window_size = 7;
  double freq_a = 1.0 / 7.0;
  BorderPolicy border_policy = BorderPolicy::skip_border;

  void validate() const;

  friend bool operator==(const LpqParams&, const LpqParams&) = default;
};

/// Spatial frequency (cycles/pixel): `horizontal` pairs with the column
/// offset, `vertical` with the row offset.
struct Frequency {
  double horizontal = 0.0;
  double vertical = 0.0;
};

struct PixelCoord {
  std::size_t row = 0;
  std::size_t col = 0;
};

/// u1 = [a, 0], u2 = [0, a], u3 = [a, a], u4 = [a, -a].
std::array<Frequency, 4> lpq_frequencies(double a);

/// Windowed STFT coefficient at `x`:
///   sum over the R x R window N_x of f(y) * exp(-j 2 pi u^T (y - x)).
/// Under replicate, out-of-image samples take the nearest edge value.
std::complex<double> local_spectra(const GrayImage& img, PixelCoord x, Frequency u,
                                   const LpqParams& p);

/// Bit j (j = 0..7) is set iff g_j >= 0 where
/// g = [Re F1..Re F4, Im F1..Im F4].
std::uint8_t quantize_phase(const std::array<std::complex<double>, 4>& coeffs);

/// Coefficient components whose magnitude is at most this fraction of the
/// window's intensity sum are treated as exact zeros before quantization.
/// Flat regions cancel to rounding noise rather than to 0.
inline constexpr double kPhaseZeroTolerance = 1e-10;

/// Applies the zero-snapping rule to the four coefficients of one window.
std::array<std::complex<double>, 4> snap_near_zero(std::array<std::complex<double>, 4> coeffs,
                                                   double window_sum);

struct LpqLabelImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> labels;

  std::uint8_t at(std::size_t row, std::size_t col) const { return labels[row * width + col]; }
};

/// Separable implementation. Under skip_border the result covers the valid
/// interior only: (W - R + 1) x (H - R + 1), top-left at offset (R-1)/2.
LpqLabelImage lpq_label_image(const GrayImage& img, const LpqParams& p);

/// L1-normalized 256-bin histogram of the label image.
FeatureVector lpq_descriptor(const GrayImage& img, const LpqParams& p);

}  // namespace sigverify
