#include "sigverify/imaging.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "sigverify/error.hpp"

namespace sigverify {

namespace {
__extension__ typedef __int128 wide_int;
}  // namespace

void PreprocessConfig::validate() const {
  if (!(gaussian_sigma > 0.0) || !std::isfinite(gaussian_sigma)) {
    throw Error(ErrorCode::invalid_argument, "gaussian_sigma must be > 0");
  }
  if (gaussian_radius < 1) {
    throw Error(ErrorCode::invalid_argument, "gaussian_radius must be >= 1");
  }
  if (gaussian_radius < static_cast<int>(std::ceil(2.0 * gaussian_sigma))) {
    throw Error(ErrorCode::invalid_argument, "gaussian_radius must be >= ceil(2 * gaussian_sigma)");
  }
  if (crop_margin < 0) {
    throw Error(ErrorCode::invalid_argument, "crop_margin must be >= 0");
  }
}

int intensity_bin(double value) {
  return static_cast<int>(std::clamp(std::lround(value), 0L, 255L));
}

std::array<std::size_t, 256> intensity_histogram(const GrayImage& img) {
  std::array<std::size_t, 256> hist{};
  for (double v : img.pixels()) ++hist[static_cast<std::size_t>(intensity_bin(v))];
  return hist;
}

OtsuResult otsu_threshold(const GrayImage& img) {
  using boost::multiprecision::int512_t;
  if (img.empty()) throw Error(ErrorCode::invalid_argument, "otsu_threshold needs at least one pixel");

  const auto hist = intensity_histogram(img);
  int occupied = 0;
  int only = 0;
  for (int i = 0; i < 256; ++i) {
    if (hist[i] != 0) {
      ++occupied;
      only = i;
    }
  }
  if (occupied == 1) return {only, true};

  // Between-class variance is proportional to (S0*N - S*N0)^2 / (N0*N1);
  // candidates are compared by cross-multiplication so ties are exact.
  wide_int total_n = 0;
  wide_int total_s = 0;
  for (int i = 0; i < 256; ++i) {
    total_n += static_cast<wide_int>(hist[i]);
    total_s += static_cast<wide_int>(hist[i]) * i;
  }

  int best_t = 0;
  int512_t best_num = 0;
  int512_t best_den = 1;
  wide_int n0 = 0;
  wide_int s0 = 0;
  for (int t = 0; t < 256; ++t) {
    n0 += static_cast<wide_int>(hist[t]);
    s0 += static_cast<wide_int>(hist[t]) * t;
    const wide_int n1 = total_n - n0;
    if (n0 == 0 || n1 == 0) continue;
    const int512_t a = int512_t(s0) * int512_t(total_n) - int512_t(total_s) * int512_t(n0);
    const int512_t num = a * a;
    const int512_t den = int512_t(n0) * int512_t(n1);
    if (num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
      best_t = t;
    }
  }
  return {best_t, false};
}

BinarizeResult binarize(const GrayImage& img) {
  const OtsuResult otsu = otsu_threshold(img);
  BinarizeResult out{BinaryImage(img.width(), img.height()), otsu.threshold, otsu.degenerate};
  if (otsu.degenerate) return out;
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      out.mask.set(r, c, intensity_bin(img.at(r, c)) <= otsu.threshold);
    }
  }
  return out;
}

std::vector<double> gaussian_kernel_1d(double sigma, int radius) {
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-(k * k) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(k + radius)] = v;
    sum += v;
  }
  for (double& v : taps) v /= sum;
  return taps;
}

GrayImage gaussian_filter(const GrayImage& img, const PreprocessConfig& cfg) {
  cfg.validate();
  const auto taps = gaussian_kernel_1d(cfg.gaussian_sigma, cfg.gaussian_radius);
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  const std::ptrdiff_t radius = cfg.gaussian_radius;
  auto clampi = [](std::ptrdiff_t v, std::ptrdiff_t hi) { return std::clamp<std::ptrdiff_t>(v, 0, hi - 1); };

  std::vector<double> horiz(img.size());
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += taps[static_cast<std::size_t>(k + radius)] *
               img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(clampi(c + k, w)));
      }
      horiz[static_cast<std::size_t>(r * w + c)] = acc;
    }
  }
  std::vector<double> out(img.size());
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += taps[static_cast<std::size_t>(k + radius)] * horiz[static_cast<std::size_t>(clampi(r + k, h) * w + c)];
      }
      out[static_cast<std::size_t>(r * w + c)] = std::clamp(acc, 0.0, 255.0);
    }
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

InkBox ink_bounding_box(const BinaryImage& mask) {
  InkBox box{mask.height(), mask.width(), 0, 0};
  bool any = false;
  for (std::size_t r = 0; r < mask.height(); ++r) {
    for (std::size_t c = 0; c < mask.width(); ++c) {
      if (!mask.ink(r, c)) continue;
      any = true;
      box.row0 = std::min(box.row0, r);
      box.col0 = std::min(box.col0, c);
      box.row1 = std::max(box.row1, r);
      box.col1 = std::max(box.col1, c);
    }
  }
  if (!any) throw Error(ErrorCode::blank_signature, "blank signature");
  return box;
}

GrayImage crop_to_ink(const GrayImage& img, const BinaryImage& mask, int margin) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw Error(ErrorCode::dimension_mismatch, "image and mask dimensions differ");
  }
  if (margin < 0) throw Error(ErrorCode::invalid_argument, "crop margin must be >= 0");
  const InkBox box = ink_bounding_box(mask);
  const auto m = static_cast<std::size_t>(margin);
  const std::size_t r0 = box.row0 >= m ? box.row0 - m : 0;
  const std::size_t c0 = box.col0 >= m ? box.col0 - m : 0;
  const std::size_t r1 = std::min(box.row1 + m, img.height() - 1);
  const std::size_t c1 = std::min(box.col1 + m, img.width() - 1);

  const std::size_t out_w = c1 - c0 + 1;
  const std::size_t out_h = r1 - r0 + 1;
  std::vector<double> px;
  px.reserve(out_w * out_h);
  for (std::size_t r = r0; r <= r1; ++r) {
    for (std::size_t c = c0; c <= c1; ++c) px.push_back(img.at(r, c));
  }
  return GrayImage(out_w, out_h, std::move(px));
}

GrayImage preprocess(const GrayImage& img, const PreprocessConfig& cfg) {
  cfg.validate();
  const BinarizeResult bin = binarize(img);
  if (bin.degenerate) throw Error(ErrorCode::blank_signature, "blank signature");
  return crop_to_ink(gaussian_filter(img, cfg), bin.mask, cfg.crop_margin);
}

}  // namespace sigverify
