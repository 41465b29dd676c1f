#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sigverify/image.hpp"

namespace testing {

inline sigverify::GrayImage random_image(std::mt19937_64& gen, std::size_t w, std::size_t h, bool integer = true) {
  std::uniform_real_distribution<double> u(0.0, 255.0);
  std::vector<double> px(w * h);
  for (double& p : px) p = integer ? std::round(u(gen)) : u(gen);
  return sigverify::GrayImage(w, h, std::move(px));
}

/// Light page with a dark, slightly shaded stroke pattern whose top-left ink
/// pixel sits at (row0, col0).
inline sigverify::GrayImage stroke_image(std::size_t w, std::size_t h, std::size_t row0, std::size_t col0) {
  sigverify::GrayImage img(w, h, 240.0);
  for (std::size_t i = 0; i < 20; ++i) {
    img.set(row0 + i / 2, col0 + i, 30.0 + 2.0 * static_cast<double>(i));
    img.set(row0 + 8 - i / 3, col0 + i, 50.0);
    img.set(row0 + i % 7, col0 + 3, 40.0);
  }
  return img;
}

inline std::vector<double> values(const sigverify::GrayImage& img) {
  return {img.pixels().begin(), img.pixels().end()};
}

}  // namespace testing
