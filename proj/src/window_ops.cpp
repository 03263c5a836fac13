#include "vecfilt/window_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace vecfilt {

namespace {

using Kind = DistanceKind::Kind;

// Both halves of the pairwise loop share one evaluation per unordered pair.
template <class PairFn>
Values symmetric_sums(std::size_t n, PairFn&& fn) {
  Values sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = fn(i, j);
      sums[i] += d;
      sums[j] += d;
    }
  }
  return sums;
}

Values inverse_norms(const Window& win) {
  Values inv(win.size(), 0.0);
  for (std::size_t i = 0; i < win.size(); ++i) {
    const double n = norm(win[i]);
    inv[i] = n > 0.0 ? 1.0 / n : 0.0;
  }
  return inv;
}

constexpr std::size_t kMaxPairs = kMaxWindowPixels * (kMaxWindowPixels - 1) / 2;

// Three passes (cosines, angles, sums) keep the acos loop free of other work,
// which lets the polynomial path vectorize.
template <AcosMode Mode>
Values angular_sums(const Window& win) {
  const std::size_t n = win.size();
  const Values inv = inverse_norms(win);
  std::array<double, kMaxPairs> angle;
  std::array<double, kMaxPairs> scale;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++m) {
      scale[m] = inv[i] * inv[j];
      angle[m] = dot(win[i], win[j]) * scale[m];
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    double a;
    if constexpr (Mode == AcosMode::approximate) {
      a = acos_fast(angle[k]);
    } else {
      a = std::acos(std::clamp(angle[k], -1.0, 1.0));
    }
    // Black pixels have no direction and contribute 0.
    a = scale[k] == 0.0 ? 0.0 : a;
    angle[k] = a > 0.0 ? a : 0.0;
  }
  Values sums(n, 0.0);
  m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++m) {
      sums[i] += angle[m];
      sums[j] += angle[m];
    }
  }
  return sums;
}

double combine_directional(double angular_sum, double magnitude_sum, double gamma) {
  return std::pow(angular_sum, gamma) * std::pow(magnitude_sum, 1.0 - gamma);
}

}  // namespace

Values cumulative_minkowski(const Window& win, double p) {
  if (p == 2.0) {
    return symmetric_sums(win.size(), [&](std::size_t i, std::size_t j) {
      const Vec3 d = win[i] - win[j];
      return std::sqrt(dot(d, d));
    });
  }
  return symmetric_sums(win.size(), [&](std::size_t i, std::size_t j) {
    return minkowski_distance(win[i], win[j], p);
  });
}

Values cumulative_angular(const Window& win, AcosMode mode) {
  return mode == AcosMode::approximate ? angular_sums<AcosMode::approximate>(win)
                                       : angular_sums<AcosMode::reference>(win);
}

Values cumulative_distances(const Window& win, const DistanceKind& kind, AcosMode mode) {
  switch (kind.kind) {
    case Kind::minkowski:
      return cumulative_minkowski(win, kind.p);
    case Kind::angular:
      return cumulative_angular(win, mode);
    case Kind::directional: {
      Values a = cumulative_angular(win, mode);
      const Values l = cumulative_minkowski(win, kind.p);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = combine_directional(a[i], l[i], kind.gamma);
      return a;
    }
  }
  return {};
}

Values weighted_cumulative_distances(const Window& win, const DistanceKind& kind,
                                     AcosMode mode, const Values& weights) {
  const std::size_t n = win.size();
  auto weighted = [&](auto&& dist) {
    Values sums(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = dist(i, j);
        sums[i] += weights[j] * d;
        sums[j] += weights[i] * d;
      }
    }
    return sums;
  };
  auto minkowski = [&](std::size_t i, std::size_t j) {
    return minkowski_distance(win[i], win[j], kind.p);
  };
  const Values inv = kind.kind == Kind::minkowski ? Values{} : inverse_norms(win);
  auto angular = [&](std::size_t i, std::size_t j) {
    const double s = inv[i] * inv[j];
    if (s == 0.0) return 0.0;
    return angle_from_cosine(dot(win[i], win[j]) * s, mode);
  };
  switch (kind.kind) {
    case Kind::minkowski:
      return weighted(minkowski);
    case Kind::angular:
      return weighted(angular);
    case Kind::directional: {
      Values a = weighted(angular);
      const Values l = weighted(minkowski);
      for (std::size_t i = 0; i < n; ++i) a[i] = combine_directional(a[i], l[i], kind.gamma);
      return a;
    }
  }
  return {};
}

double cumulative_distance(const Vec3& v, const Window& win, const DistanceKind& kind,
                           AcosMode mode) {
  double l = 0.0;
  double a = 0.0;
  if (kind.kind != Kind::angular) {
    for (const Vec3& x : win) l += minkowski_distance(v, x, kind.p);
  }
  if (kind.kind != Kind::minkowski) {
    for (const Vec3& x : win) a += angular_distance(v, x, mode);
  }
  switch (kind.kind) {
    case Kind::minkowski:
      return l;
    case Kind::angular:
      return a;
    case Kind::directional:
      return combine_directional(a, l, kind.gamma);
  }
  return 0.0;
}

std::size_t argmin(const Values& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

std::size_t argmax(const Values& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Indices rank_ascending(const Values& values) {
  Indices order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

Indices rank_window(const Window& win, const DistanceKind& kind, AcosMode mode) {
  return rank_ascending(cumulative_distances(win, kind, mode));
}

Vec3 window_mean(const Window& win) {
  Vec3 sum;
  for (const Vec3& x : win) sum += x;
  return sum / static_cast<double>(win.size());
}

Vec3 mean_of_ranked(const Window& win, const Indices& order, std::size_t count) {
  Vec3 sum;
  for (std::size_t i = 0; i < count; ++i) sum += win[order[i]];
  return sum / static_cast<double>(count);
}

// Accumulates offsets from the first pixel, so a constant window is returned
// exactly whatever the weights.
Vec3 weighted_average(const Window& win, const Values& weights) {
  const Vec3& anchor = win[0];
  double total = 0.0;
  Vec3 sum;
  for (std::size_t i = 0; i < win.size(); ++i) {
    total += weights[i];
    sum += weights[i] * (win[i] - anchor);
  }
  if (!(total > 0.0)) return window_mean(win);
  return anchor + sum / total;
}

}  // namespace vecfilt
