#include "sigverify/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sigverify/error.hpp"

namespace sigverify {

namespace {

void check_dims(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::invalid_argument, "image dimensions must be at least 1x1");
  }
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  if (!std::isfinite(fill) || fill < 0.0 || fill > 255.0) {
    throw Error(ErrorCode::invalid_argument, "fill intensity outside [0, 255]");
  }
  pixels_.assign(width * height, fill);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != width * height) {
    throw Error(ErrorCode::dimension_mismatch,
                "pixel buffer holds " + std::to_string(pixels_.size()) + " values, expected " +
                    std::to_string(width * height));
  }
  for (double v : pixels_) {
    if (!std::isfinite(v) || v < 0.0 || v > 255.0) {
      throw Error(ErrorCode::invalid_argument, "pixel intensity outside [0, 255]");
    }
  }
}

void GrayImage::set(std::size_t row, std::size_t col, double value) {
  pixels_[row * width_ + col] = std::clamp(value, 0.0, 255.0);
}

BinaryImage::BinaryImage(std::size_t width, std::size_t height)
    : width_(width), height_(height), bits_(width * height, 0) {
  check_dims(width, height);
}

BinaryImage::BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_dims(width, height);
  if (bits_.size() != width * height) {
    throw Error(ErrorCode::dimension_mismatch, "mask buffer size disagrees with dimensions");
  }
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw Error(ErrorCode::invalid_argument, "mask values must be 0 or 1");
  }
}

std::size_t BinaryImage::ink_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace sigverify
