#include "sigverify/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "sigverify/error.hpp"

namespace sigverify {

namespace {

// Symmetric half-sample reflection into [0, n).
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto len = static_cast<std::ptrdiff_t>(n);
  while (i < 0 || i >= len) {
    if (i < 0) i = -i - 1;
    if (i >= len) i = 2 * len - i - 1;
  }
  return static_cast<std::size_t>(i);
}

Grid transform_rows(const Grid& in, const WaveletFilterPair& f, Grid& high) {
  const std::size_t half = (in.width + 1) / 2;
  Grid low(half, in.height);
  high = Grid(half, in.height);
  std::vector<double> row(in.width);
  for (std::size_t r = 0; r < in.height; ++r) {
    std::copy_n(in.values.begin() + static_cast<std::ptrdiff_t>(r * in.width), in.width, row.begin());
    const DwtOutput out = dwt_1d(row, f);
    for (std::size_t c = 0; c < half; ++c) {
      low.at(r, c) = out.approx[c];
      high.at(r, c) = out.detail[c];
    }
  }
  return low;
}

Grid transform_cols(const Grid& in, const WaveletFilterPair& f, Grid& high) {
  const std::size_t half = (in.height + 1) / 2;
  Grid low(in.width, half);
  high = Grid(in.width, half);
  std::vector<double> col(in.height);
  for (std::size_t c = 0; c < in.width; ++c) {
    for (std::size_t r = 0; r < in.height; ++r) col[r] = in.at(r, c);
    const DwtOutput out = dwt_1d(col, f);
    for (std::size_t r = 0; r < half; ++r) {
      low.at(r, c) = out.approx[r];
      high.at(r, c) = out.detail[r];
    }
  }
  return low;
}

}  // namespace

WaveletFilterPair WaveletFilterPair::from_lowpass(std::vector<double> low) {
  if (low.size() < 2 || low.size() % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "wavelet low-pass filter must have even length >= 2");
  }
  double energy = 0.0;
  for (double v : low) energy += v * v;
  if (std::abs(energy - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_argument, "wavelet low-pass filter is not orthonormal");
  }
  WaveletFilterPair f;
  const std::size_t n = low.size();
  f.high_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.high_[i] = (i % 2 == 0 ? 1.0 : -1.0) * low[n - 1 - i];
  }
  f.low_ = std::move(low);
  return f;
}

WaveletFilterPair WaveletFilterPair::haar() {
  const double c = 1.0 / std::numbers::sqrt2;
  return from_lowpass({c, c});
}

WaveletFilterPair WaveletFilterPair::daubechies4() {
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::numbers::sqrt2;
  return from_lowpass({(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d});
}

Grid Grid::from_image(const GrayImage& img) {
  Grid g;
  g.width = img.width();
  g.height = img.height();
  g.values.assign(img.pixels().begin(), img.pixels().end());
  return g;
}

void DwtParams::validate() const {
  if (levels < 1) throw Error(ErrorCode::invalid_argument, "DWT levels must be >= 1");
  if (histogram_bins < 1) throw Error(ErrorCode::invalid_argument, "histogram_bins must be >= 1");
  const std::size_t min_side = std::size_t{1} << levels;
  if (canonical_width < min_side || canonical_height < min_side) {
    throw Error(ErrorCode::invalid_argument, "canonical size must be >= 2^levels in both dimensions");
  }
}

DwtOutput dwt_1d(std::span<const double> signal, const WaveletFilterPair& f) {
  const std::size_t n = signal.size();
  if (n < 2) throw Error(ErrorCode::signal_too_short, "signal too short");
  const std::size_t half = (n + 1) / 2;
  const auto low = f.low();
  const auto high = f.high();
  DwtOutput out{std::vector<double>(half), std::vector<double>(half)};
  for (std::size_t p = 0; p < half; ++p) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t k = 0; k < f.length(); ++k) {
      const double x = signal[reflect(static_cast<std::ptrdiff_t>(2 * p + k), n)];
      a += low[k] * x;
      d += high[k] * x;
    }
    out.approx[p] = a;
    out.detail[p] = d;
  }
  return out;
}

SubbandLevel dwt2_level(const Grid& img, const WaveletFilterPair& f) {
  if (img.width < 2 || img.height < 2) {
    throw Error(ErrorCode::image_too_small, "DWT level needs at least 2x2 input");
  }
  Grid row_high;
  const Grid row_low = transform_rows(img, f, row_high);
  SubbandLevel out;
  out.ll = transform_cols(row_low, f, out.hl);
  out.lh = transform_cols(row_high, f, out.hh);
  return out;
}

SubbandLevel dwt2_level(const GrayImage& img, const WaveletFilterPair& f) {
  return dwt2_level(Grid::from_image(img), f);
}

Grid resample_bilinear(const GrayImage& img, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw Error(ErrorCode::invalid_argument, "resample target must be non-empty");
  Grid out(width, height);
  const double sx = static_cast<double>(img.width()) / static_cast<double>(width);
  const double sy = static_cast<double>(img.height()) / static_cast<double>(height);
  auto source = [](std::size_t dst, double scale, std::size_t extent) {
    const double s = std::clamp((static_cast<double>(dst) + 0.5) * scale - 0.5, 0.0,
                                static_cast<double>(extent - 1));
    const auto i0 = static_cast<std::size_t>(std::floor(s));
    const std::size_t i1 = std::min(i0 + 1, extent - 1);
    return std::tuple{i0, i1, s - static_cast<double>(i0)};
  };
  for (std::size_t r = 0; r < height; ++r) {
    const auto [r0, r1, ty] = source(r, sy, img.height());
    for (std::size_t c = 0; c < width; ++c) {
      const auto [c0, c1, tx] = source(c, sx, img.width());
      const double p00 = img.at(r0, c0);
      const double p01 = img.at(r0, c1);
      const double p10 = img.at(r1, c0);
      const double p11 = img.at(r1, c1);
      // a + t (b - a) keeps flat regions exactly flat.
      const double top = p00 + tx * (p01 - p00);
      const double bottom = p10 + tx * (p11 - p10);
      out.at(r, c) = top + ty * (bottom - top);
    }
  }
  return out;
}

SubbandPyramid dwt_pyramid(const GrayImage& img, const DwtParams& p, const WaveletFilterPair& f) {
  p.validate();
  SubbandPyramid pyr;
  pyr.levels = p.levels;
  Grid current = resample_bilinear(img, p.canonical_width, p.canonical_height);
  for (int level = 0; level < p.levels; ++level) {
    SubbandLevel bands = dwt2_level(current, f);
    pyr.details.push_back({std::move(bands.lh), std::move(bands.hl), std::move(bands.hh)});
    current = std::move(bands.ll);
  }
  pyr.approximation = std::move(current);
  return pyr;
}

std::vector<double> magnitude_histogram(std::span<const double> coeffs, int bins) {
  if (bins < 1) throw Error(ErrorCode::invalid_argument, "histogram needs at least one bin");
  if (coeffs.empty()) throw Error(ErrorCode::empty_data, "empty sub-band");
  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  double max_abs = 0.0;
  for (double v : coeffs) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) {
    hist[0] = 1.0;
    return hist;
  }
  std::vector<std::size_t> counts(hist.size(), 0);
  for (double v : coeffs) {
    const auto b = static_cast<std::size_t>(std::floor(std::abs(v) / max_abs * bins));
    ++counts[std::min(b, hist.size() - 1)];
  }
  const auto total = static_cast<double>(coeffs.size());
  for (std::size_t i = 0; i < hist.size(); ++i) hist[i] = static_cast<double>(counts[i]) / total;
  return hist;
}

FeatureVector wavelet_descriptor(const GrayImage& img, const DwtParams& p, const WaveletFilterPair& f) {
  const SubbandPyramid pyr = dwt_pyramid(img, p, f);
  std::vector<double> out;
  out.reserve(p.descriptor_dim());
  auto append = [&](const Grid& g) {
    const auto h = magnitude_histogram(g.values, p.histogram_bins);
    out.insert(out.end(), h.begin(), h.end());
  };
  append(pyr.approximation);
  for (auto it = pyr.details.rbegin(); it != pyr.details.rend(); ++it) {
    append(it->lh);
    append(it->hl);
    append(it->hh);
  }
  return FeatureVector(std::move(out));
}

}  // namespace sigverify
