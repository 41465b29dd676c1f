#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sigverify {

inline constexpr std::size_t kLpqDim = 256;
inline constexpr std::size_t kWaveletDim = 120;

/// Fixed-length real descriptor fed to the one-class SVMs.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> values) : values_(std::move(values)) {}
  FeatureVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace sigverify
