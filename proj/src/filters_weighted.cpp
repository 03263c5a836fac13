#include "vecfilt/filters_weighted.hpp"

#include <string>

#include "vecfilt/errors.hpp"
#include "vecfilt/filters_basic.hpp"
#include "vecfilt/window_ops.hpp"

namespace vecfilt {

namespace {

int center_rank(const Window& win) { return static_cast<int>(win.size() + 1) / 2; }

}  // namespace

std::size_t cwvf_index(const Window& win, int k, const DistanceKind& kind, AcosMode mode) {
  const int c = center_rank(win);
  if (k < 1 || k > c) {
    throw ContractViolation("cwvf k must lie in [1, " + std::to_string(c) + "], got " +
                            std::to_string(k));
  }
  Values weights(win.size(), 1.0);
  weights[win.center_index()] = static_cast<double>(static_cast<int>(win.size()) - 2 * k + 2);
  return argmin(weighted_cumulative_distances(win, kind, mode, weights));
}

Vec3 cwvf(const Window& win, int k, const DistanceKind& kind, AcosMode mode) {
  return win[cwvf_index(win, k, kind, mode)];
}

Vec3 mcwvmf(const Window& win, double w, double p) {
  if (!(w >= 0.0 && w <= 1.0)) throw ContractViolation("mcwvmf weight must lie in [0, 1]");
  const Values l = cumulative_minkowski(win, p);
  const std::size_t best = argmin(l);
  if (l[best] < w * l[win.center_index()]) return win[best];
  return win.center();
}

Vec3 acwvf(const Window& win, const DistanceKind& kind, int lambda, double threshold,
           AcosMode mode) {
  const int c = center_rank(win);
  if (lambda < 1 || lambda + 2 > c) {
    throw ContractViolation("acwvf lambda must satisfy 1 <= lambda and lambda + 2 <= " +
                            std::to_string(c));
  }
  const Vec3& center = win.center();
  double spread = 0.0;
  for (int k = lambda; k <= lambda + 2; ++k) {
    const Vec3& y = win[cwvf_index(win, k, kind, mode)];
    switch (kind.kind) {
      case DistanceKind::Kind::minkowski:
        spread += minkowski_distance(y, center, 2.0);
        break;
      case DistanceKind::Kind::angular:
        spread += angular_distance(y, center, mode);
        break;
      case DistanceKind::Kind::directional:
        spread += directional_pair_distance(y, center, kind.gamma, 2.0, mode);
        break;
    }
  }
  if (spread > threshold) return basic_filter(win, kind, mode);
  return center;
}

}  // namespace vecfilt
