#include "sigverify/lpq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sigverify/error.hpp"

namespace sigverify {

namespace {

using cplx = std::complex<double>;

std::ptrdiff_t clamp_index(std::ptrdiff_t v, std::size_t extent) {
  return std::clamp<std::ptrdiff_t>(v, 0, static_cast<std::ptrdiff_t>(extent) - 1);
}

// Edge-replicated copy padded by `pad` on every side.
GrayImage pad_replicate(const GrayImage& img, std::size_t pad) {
  const std::size_t w = img.width() + 2 * pad;
  const std::size_t h = img.height() + 2 * pad;
  std::vector<double> px(w * h);
  for (std::size_t r = 0; r < h; ++r) {
    const auto sr = static_cast<std::size_t>(
        clamp_index(static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(pad), img.height()));
    for (std::size_t c = 0; c < w; ++c) {
      const auto sc = static_cast<std::size_t>(
          clamp_index(static_cast<std::ptrdiff_t>(c) - static_cast<std::ptrdiff_t>(pad), img.width()));
      px[r * w + c] = img.at(sr, sc);
    }
  }
  return GrayImage(w, h, std::move(px));
}

// Label image over the valid interior of `img` (no padding applied here).
LpqLabelImage interior_labels(const GrayImage& img, const LpqParams& p) {
  const std::size_t win = static_cast<std::size_t>(p.window_size);
  const std::ptrdiff_t radius = (p.window_size - 1) / 2;
  const std::size_t out_w = img.width() - win + 1;
  const std::size_t out_h = img.height() - win + 1;

  std::vector<cplx> taps(win);
  for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
    taps[static_cast<std::size_t>(d + radius)] = std::polar(1.0, -2.0 * std::numbers::pi * p.freq_a * static_cast<double>(d));
  }

  // Horizontal pass over every source row: box sum and first-harmonic sum.
  const std::size_t h = img.height();
  std::vector<double> box(h * out_w);
  std::vector<cplx> wave(h * out_w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < out_w; ++c) {
      double b = 0.0;
      cplx s{};
      for (std::size_t k = 0; k < win; ++k) {
        const double f = img.at(r, c + k);
        b += f;
        s += taps[k] * f;
      }
      box[r * out_w + c] = b;
      wave[r * out_w + c] = s;
    }
  }

  LpqLabelImage out{out_w, out_h, std::vector<std::uint8_t>(out_w * out_h)};
  for (std::size_t r = 0; r < out_h; ++r) {
    for (std::size_t c = 0; c < out_w; ++c) {
      double sum = 0.0;
      std::array<cplx, 4> f{};
      for (std::size_t k = 0; k < win; ++k) {
        const std::size_t idx = (r + k) * out_w + c;
        sum += box[idx];
        f[0] += wave[idx];
        f[1] += taps[k] * box[idx];
        f[2] += taps[k] * wave[idx];
        f[3] += std::conj(taps[k]) * wave[idx];
      }
      out.labels[r * out_w + c] = quantize_phase(snap_near_zero(f, sum));
    }
  }
  return out;
}

}  // namespace

void LpqParams::validate() const {
  if (window_size < 3 || window_size % 2 == 0) {
    throw Error(ErrorCode::invalid_argument, "LPQ window_size must be an odd integer >= 3");
  }
  if (!(freq_a > 0.0 && freq_a <= 0.5)) {
    throw Error(ErrorCode::invalid_argument, "LPQ freq_a must lie in (0, 0.5]");
  }
}

std::array<Frequency, 4> lpq_frequencies(double a) {
  return {Frequency{a, 0.0}, Frequency{0.0, a}, Frequency{a, a}, Frequency{a, -a}};
}

std::complex<double> local_spectra(const GrayImage& img, PixelCoord x, Frequency u, const LpqParams& p) {
  p.validate();
  const std::ptrdiff_t radius = (p.window_size - 1) / 2;
  const auto row = static_cast<std::ptrdiff_t>(x.row);
  const auto col = static_cast<std::ptrdiff_t>(x.col);
  if (x.row >= img.height() || x.col >= img.width()) {
    throw Error(ErrorCode::invalid_argument, "pixel coordinate outside the image");
  }
  if (p.border_policy == BorderPolicy::skip_border &&
      (row < radius || col < radius || row + radius >= static_cast<std::ptrdiff_t>(img.height()) ||
       col + radius >= static_cast<std::ptrdiff_t>(img.width()))) {
    throw Error(ErrorCode::border_pixel, "border pixel");
  }
  cplx acc{};
  for (std::ptrdiff_t dr = -radius; dr <= radius; ++dr) {
    for (std::ptrdiff_t dc = -radius; dc <= radius; ++dc) {
      const double f = img.at(static_cast<std::size_t>(clamp_index(row + dr, img.height())),
                              static_cast<std::size_t>(clamp_index(col + dc, img.width())));
      const double phase = -2.0 * std::numbers::pi *
                           (u.horizontal * static_cast<double>(dc) + u.vertical * static_cast<double>(dr));
      acc += f * std::polar(1.0, phase);
    }
  }
  return acc;
}

std::uint8_t quantize_phase(const std::array<std::complex<double>, 4>& coeffs) {
  unsigned label = 0;
  for (unsigned j = 0; j < 4; ++j) {
    if (coeffs[j].real() >= 0.0) label |= 1u << j;
    if (coeffs[j].imag() >= 0.0) label |= 1u << (j + 4);
  }
  return static_cast<std::uint8_t>(label);
}

std::array<std::complex<double>, 4> snap_near_zero(std::array<std::complex<double>, 4> coeffs,
                                                   double window_sum) {
  const double eps = kPhaseZeroTolerance * std::abs(window_sum);
  for (auto& c : coeffs) {
    const double re = std::abs(c.real()) <= eps ? 0.0 : c.real();
    const double im = std::abs(c.imag()) <= eps ? 0.0 : c.imag();
    c = {re, im};
  }
  return coeffs;
}

LpqLabelImage lpq_label_image(const GrayImage& img, const LpqParams& p) {
  p.validate();
  const auto win = static_cast<std::size_t>(p.window_size);
  if (img.width() <= win || img.height() <= win) {
    throw Error(ErrorCode::image_too_small, "image smaller than LPQ window");
  }
  if (p.border_policy == BorderPolicy::replicate) {
    return interior_labels(pad_replicate(img, (win - 1) / 2), p);
  }
  return interior_labels(img, p);
}

FeatureVector lpq_descriptor(const GrayImage& img, const LpqParams& p) {
  const LpqLabelImage labels = lpq_label_image(img, p);
  std::array<std::size_t, kLpqDim> counts{};
  for (std::uint8_t l : labels.labels) ++counts[l];
  std::vector<double> hist(kLpqDim);
  const auto total = static_cast<double>(labels.labels.size());
  for (std::size_t i = 0; i < kLpqDim; ++i) hist[i] = static_cast<double>(counts[i]) / total;
  return FeatureVector(std::move(hist));
}

}  // namespace sigverify
