#pragma once

// Exhaustive Otsu: every threshold, between-class variance in exact rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

namespace oracle {

struct OtsuAnswer {
  int threshold = 0;
  bool degenerate = false;
};

inline OtsuAnswer otsu(const std::vector<double>& pixels) {
  using boost::multiprecision::cpp_rational;
  std::vector<int> v;
  for (double p : pixels) v.push_back(static_cast<int>(std::min(255.0, std::max(0.0, std::round(p)))));

  bool all_same = true;
  for (int x : v) all_same = all_same && x == v.front();
  if (all_same) return {v.front(), true};

  const cpp_rational n(static_cast<long>(v.size()));
  cpp_rational best = -1;
  int best_t = -1;
  for (int t = 0; t <= 255; ++t) {
    long n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (int x : v) {
      if (x <= t) {
        ++n0;
        s0 += x;
      } else {
        ++n1;
        s1 += x;
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const cpp_rational w0 = cpp_rational(n0) / n;
    const cpp_rational w1 = cpp_rational(n1) / n;
    const cpp_rational mu0 = cpp_rational(s0) / n0;
    const cpp_rational mu1 = cpp_rational(s1) / n1;
    const cpp_rational var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (var > best) {
      best = var;
      best_t = t;
    }
  }
  return {best_t, false};
}

}  // namespace oracle
