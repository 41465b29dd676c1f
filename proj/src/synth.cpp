#include "sigverify/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "sigverify/error.hpp"
#include "sigverify/rng.hpp"

namespace sigverify {

namespace {

constexpr double kBackground = 235.0;
constexpr double kInk = 40.0;
constexpr double kPageNoise = 2.0;
constexpr double kMaxShift = 6.0;
constexpr double kTremorGain = 0.35;
constexpr int kSegmentSamples = 80;
constexpr std::uint64_t kGenuineTag = 0x47454E55494E45ULL;
constexpr std::uint64_t kForgeryTag = 0x464F52474552ULL;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// A stroke is a chain of cubic Bezier segments sharing end points:
// control[3i .. 3i+3] is segment i.
struct Stroke {
  std::vector<Point> control;
};

struct Skeleton {
  std::vector<Stroke> strokes;
  double pen_radius = 1.5;
};

Skeleton make_skeleton(const SynthWriterSpec& spec) {
  SplitMix64 rng(spec.writer_seed);
  Skeleton sk;
  sk.pen_radius = rng.uniform(1.1, 2.0);
  const double w = spec.canvas_width;
  const double h = spec.canvas_height;
  const double left = 0.15 * w;
  const double span = 0.7 * w;
  const double slot = span / spec.stroke_count;
  for (int s = 0; s < spec.stroke_count; ++s) {
    Stroke stroke;
    Point anchor{left + slot * s + rng.uniform(0.0, 0.3 * slot), rng.uniform(0.35 * h, 0.65 * h)};
    stroke.control.push_back(anchor);
    const int segments = 3 + static_cast<int>(rng.below(3));
    const double step = slot / segments * 1.4;
    for (int seg = 0; seg < segments; ++seg) {
      Point next{anchor.x + rng.uniform(0.4, 1.0) * step, std::clamp(anchor.y + rng.uniform(-0.22, 0.22) * h, 0.25 * h, 0.75 * h)};
      const double handle = 0.18 * h;
      stroke.control.push_back({anchor.x + rng.uniform(-0.5, 1.0) * step, anchor.y + rng.uniform(-handle, handle)});
      stroke.control.push_back({next.x - rng.uniform(-0.5, 1.0) * step, next.y + rng.uniform(-handle, handle)});
      stroke.control.push_back(next);
      anchor = next;
    }
    sk.strokes.push_back(std::move(stroke));
  }
  return sk;
}

Point bezier(const Point& p0, const Point& p1, const Point& p2, const Point& p3, double t) {
  const double u = 1.0 - t;
  const double a = u * u * u, b = 3 * u * u * t, c = 3 * u * t * t, d = t * t * t;
  return {a * p0.x + b * p1.x + c * p2.x + d * p3.x, a * p0.y + b * p1.y + c * p2.y + d * p3.y};
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = p.x - (a.x + t * dx), ey = p.y - (a.y + t * dy);
  return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

void SynthWriterSpec::validate() const {
  if (stroke_count < 1) throw Error(ErrorCode::invalid_argument, "synthetic writer needs at least one stroke (zero strokes)");
  if (!(jitter_genuine >= 0.0) || !(jitter_forgery >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "jitter scales must be >= 0");
  }
  if (canvas_width < 64 || canvas_height < 48) {
    throw Error(ErrorCode::invalid_argument, "synthetic canvas must be at least 64x48");
  }
}

std::vector<SynthWriterSpec> default_synth_specs(int writers, std::uint64_t seed) {
  if (writers < 1) throw Error(ErrorCode::invalid_argument, "need at least one synthetic writer");
  std::vector<SynthWriterSpec> specs;
  for (int i = 0; i < writers; ++i) {
    SynthWriterSpec s;
    s.writer_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    s.stroke_count = 3 + static_cast<int>(s.writer_seed % 3);
    specs.push_back(s);
  }
  return specs;
}

GrayImage render_synth_sample(const SynthWriterSpec& spec, double jitter, std::uint64_t sample_seed) {
  spec.validate();
  const Skeleton sk = make_skeleton(spec);
  SplitMix64 rng(sample_seed);
  const Point shift{rng.uniform(-kMaxShift, kMaxShift), rng.uniform(-kMaxShift, kMaxShift)};

  // Perturb control points, then sample each segment densely and add a
  // smooth tremor normal to the path.
  std::vector<std::vector<Point>> paths;
  for (const Stroke& stroke : sk.strokes) {
    std::vector<Point> ctrl = stroke.control;
    for (auto& p : ctrl) {
      p.x += shift.x + rng.uniform(-jitter, jitter);
      p.y += shift.y + rng.uniform(-jitter, jitter);
    }
    const double wavelength = rng.uniform(6.0, 14.0);
    const double phase1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double phase2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double amplitude = kTremorGain * jitter;

    std::vector<Point> path;
    for (std::size_t seg = 0; seg + 3 < ctrl.size(); seg += 3) {
      for (int i = (seg == 0 ? 0 : 1); i <= kSegmentSamples; ++i) {
        const double t = static_cast<double>(i) / kSegmentSamples;
        const Point p = bezier(ctrl[seg], ctrl[seg + 1], ctrl[seg + 2], ctrl[seg + 3], t);
        path.push_back(p);
      }
    }
    // Tremor along the normal direction, parameterized by arc length.
    std::vector<Point> wobbly(path.size());
    double s = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i > 0) s += std::hypot(path[i].x - path[i - 1].x, path[i].y - path[i - 1].y);
      const Point& a = path[i == 0 ? 0 : i - 1];
      const Point& b = path[i + 1 < path.size() ? i + 1 : i];
      double nx = -(b.y - a.y), ny = b.x - a.x;
      const double norm = std::hypot(nx, ny);
      if (norm > 0.0) {
        nx /= norm;
        ny /= norm;
      }
      const double offset = amplitude * (std::sin(2.0 * std::numbers::pi * s / wavelength + phase1) +
                                         0.5 * std::sin(2.0 * std::numbers::pi * s / (0.45 * wavelength) + phase2));
      wobbly[i] = {path[i].x + offset * nx, path[i].y + offset * ny};
    }
    paths.push_back(std::move(wobbly));
  }

  const auto w = static_cast<std::size_t>(spec.canvas_width);
  const auto h = static_cast<std::size_t>(spec.canvas_height);
  std::vector<double> dist(w * h, std::numeric_limits<double>::infinity());
  const double reach = sk.pen_radius + 1.0;
  for (const auto& path : paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const Point& a = path[i];
      const Point& b = path[i + 1];
      const auto c0 = static_cast<long>(std::floor(std::min(a.x, b.x) - reach));
      const auto c1 = static_cast<long>(std::ceil(std::max(a.x, b.x) + reach));
      const auto r0 = static_cast<long>(std::floor(std::min(a.y, b.y) - reach));
      const auto r1 = static_cast<long>(std::ceil(std::max(a.y, b.y) + reach));
      for (long r = std::max(r0, 0L); r <= std::min(r1, static_cast<long>(h) - 1); ++r) {
        for (long c = std::max(c0, 0L); c <= std::min(c1, static_cast<long>(w) - 1); ++c) {
          const double d = segment_distance({static_cast<double>(c), static_cast<double>(r)}, a, b);
          double& slot = dist[static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)];
          slot = std::min(slot, d);
        }
      }
    }
  }

  std::vector<double> px(w * h);
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double coverage = std::clamp(sk.pen_radius + 0.5 - dist[i], 0.0, 1.0);
    const double v = kBackground - (kBackground - kInk) * coverage + kPageNoise * rng.normal();
    px[i] = std::clamp(std::round(v), 0.0, 255.0);
  }
  return GrayImage(w, h, std::move(px));
}

Corpus generate_synth_corpus(const std::vector<SynthWriterSpec>& specs, int n_genuine, int n_forgery) {
  if (specs.empty()) throw Error(ErrorCode::invalid_argument, "synthetic corpus needs at least one writer spec");
  if (n_genuine < 1 || n_forgery < 1) throw Error(ErrorCode::invalid_argument, "sample counts must be >= 1");
  Corpus corpus;
  corpus.corpus_id = "synthetic";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const SynthWriterSpec& spec = specs[i];
    spec.validate();
    char id[16];
    std::snprintf(id, sizeof id, "w%03zu", i);
    WriterImages writer{id, {}, {}};
    for (int s = 0; s < n_genuine; ++s) {
      writer.genuine.push_back(render_synth_sample(
          spec, spec.jitter_genuine, mix_seed(mix_seed(spec.writer_seed, kGenuineTag), static_cast<std::uint64_t>(s))));
    }
    for (int s = 0; s < n_forgery; ++s) {
      writer.forgery.push_back(render_synth_sample(
          spec, spec.jitter_forgery, mix_seed(mix_seed(spec.writer_seed, kForgeryTag), static_cast<std::uint64_t>(s))));
    }
    corpus.writers.push_back(std::move(writer));
  }
  return corpus;
}

}  // namespace sigverify
