#include "vecfilt/filters_misc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vecfilt/errors.hpp"
#include "vecfilt/filters_basic.hpp"
#include "vecfilt/window_ops.hpp"

namespace vecfilt {

Vec3 vsdromf(const Window& win, const std::array<double, 4>& thresholds, double p) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw ContractViolation("vsdromf thresholds must be non-decreasing");
  }
  const Indices order = rank_window(win, DistanceKind::minkowski(p), AcosMode::reference);
  const Vec3& center = win.center();
  const std::size_t ranks = std::min<std::size_t>(thresholds.size(), win.size());
  for (std::size_t i = 0; i < ranks; ++i) {
    if (minkowski_distance(center, win[order[i]], p) > thresholds[i]) return win[order[0]];
  }
  return center;
}

namespace {

constexpr double kBandwidthFloor = 1e-6;

}  // namespace

Vec3 amnf(const Window& win, AmnfKernel kernel, double k, int c) {
  if (!(k > 0.0) || c < 1) throw ContractViolation("amnf needs k > 0 and c >= 1");
  const double n = static_cast<double>(win.size());
  const double scale = std::pow(n, -k / c);
  const Values l1 = cumulative_minkowski(win, 1.0);
  const Vec3& center = win.center();
  double total = 0.0;
  Vec3 sum;
  for (std::size_t i = 0; i < win.size(); ++i) {
    const double h = std::max(kBandwidthFloor, scale * l1[i]);
    const Vec3 z = (center - win[i]) / h;
    const double kz = kernel == AmnfKernel::exponential ? std::exp(-norm(z))
                                                         : std::exp(-0.5 * dot(z, z));
    const double u = std::pow(h, -c) * kz;
    total += u;
    sum += u * (win[i] - center);
  }
  return center + sum / total;
}

Vec3 fmvmf(const Window& win, double threshold, double p) {
  if (!(threshold >= 0.0)) throw ContractViolation("fmvmf threshold must be non-negative");
  const std::size_t c = win.center_index();
  const Vec3& center = win.center();
  // Sums over i != C. The center's own sum has no self term, so it equals the
  // full cumulative distance of the center.
  Values s(win.size(), 0.0);
  for (std::size_t i = 0; i < win.size(); ++i) {
    for (std::size_t j = i + 1; j < win.size(); ++j) {
      const double d = minkowski_distance(win[i], win[j], p);
      if (j != c) s[i] += d;
      if (i != c) s[j] += d;
    }
  }
  const std::size_t best = argmin(s);
  if (s[c] - s[best] > threshold) return win[best];
  return center;
}

Vec3 avf_adaptive(const Window& win, const DistanceKind& kind, double threshold, int k,
                  AcosMode mode) {
  if (k < 1 || static_cast<std::size_t>(k) > win.size()) {
    throw ContractViolation("adaptive vector filter k must lie in [1, n], got " +
                            std::to_string(k));
  }
  if (kind.kind == DistanceKind::Kind::directional) {
    throw ContractViolation("adaptive vector filter supports Minkowski and angular kinds only");
  }
  const Indices order = rank_window(win, kind, mode);
  const Vec3 low_mean = mean_of_ranked(win, order, static_cast<std::size_t>(k));
  const Vec3& center = win.center();
  const double d = kind.kind == DistanceKind::Kind::minkowski
                       ? minkowski_distance(center, low_mean, kind.p)
                       : angular_distance(center, low_mean, mode);
  if (d > threshold) return win[order[0]];
  return center;
}

namespace {

// s_k = sum over i != C of M(x_k, x_i); includes the unit self term for k != C.
template <class Similarity>
Vec3 ffnrf_impl(const Window& win, Similarity&& similarity) {
  const std::size_t c = win.center_index();
  const std::size_t n = win.size();
  Values s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != c) s[i] += 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = similarity(win[i], win[j]);
      if (j != c) s[i] += m;
      if (i != c) s[j] += m;
    }
  }
  const double center_sum = 1.0 + s[c];
  const std::size_t best = argmax(s);
  if (center_sum < s[best]) return win[best];
  return win.center();
}

bool is_byte_valued(const Window& win) {
  auto ok = [](double v) { return v >= 0.0 && v <= 255.0 && v == std::floor(v); };
  return std::all_of(win.begin(), win.end(),
                     [&](const Vec3& x) { return ok(x.r) && ok(x.g) && ok(x.b); });
}

}  // namespace

Vec3 ffnrf(const Window& win, double K, double alpha) {
  if (!(K > 0.0) || !(alpha > 0.0)) throw ContractViolation("ffnrf needs K > 0 and alpha > 0");
  return ffnrf_impl(win, [&](const Vec3& a, const Vec3& b) { return fuzzy_metric(a, b, K, alpha); });
}

Vec3 ffnrf(const Window& win, const FuzzyMetricTable& table) {
  if (!is_byte_valued(win)) return ffnrf(win, table.K(), table.alpha());
  return ffnrf_impl(win, table);
}

}  // namespace vecfilt
