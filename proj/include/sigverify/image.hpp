#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sigverify {

/// Row-major grayscale raster with intensities in [0, 255]. Signatures are
/// dark ink on a light background.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height, double fill = 255.0);
  /// Takes ownership of `pixels`; throws if the size disagrees with the
  /// dimensions or any value is non-finite or outside [0, 255].
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  /// Writes are clamped into [0, 255] so the invariant cannot be broken.
  void set(std::size_t row, std::size_t col, double value);

  std::span<const double> pixels() const noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// Ink mask: 1 = ink (foreground), 0 = background.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(std::size_t width, std::size_t height);
  BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool ink(std::size_t row, std::size_t col) const { return bits_[row * width_ + col] != 0; }
  void set(std::size_t row, std::size_t col, bool ink) { bits_[row * width_ + col] = ink ? 1 : 0; }
  std::size_t ink_count() const noexcept;

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace sigverify
