#include "vecfilt/filters_basic.hpp"

#include <string>

#include "vecfilt/errors.hpp"
#include "vecfilt/window_ops.hpp"

namespace vecfilt {

std::size_t vmf_index(const Window& win, double p) {
  return argmin(cumulative_minkowski(win, p));
}

std::size_t bvdf_index(const Window& win, AcosMode mode) {
  return argmin(cumulative_angular(win, mode));
}

std::size_t ddf_index(const Window& win, double gamma, double p, AcosMode mode) {
  return argmin(cumulative_distances(win, DistanceKind::directional(gamma, p), mode));
}

std::size_t cbrf_index(const Window& win) {
  Values sums(win.size(), 0.0);
  for (std::size_t i = 0; i < win.size(); ++i) {
    for (std::size_t j = i + 1; j < win.size(); ++j) {
      const double g = cbrf_similarity(win[i], win[j]);
      sums[i] += g;
      sums[j] += g;
    }
  }
  return argmin(sums);
}

Vec3 vmf(const Window& win, double p) { return win[vmf_index(win, p)]; }

Vec3 atvmf(const Window& win, int alpha, double p) {
  if (alpha < 0 || static_cast<std::size_t>(alpha) >= win.size()) {
    throw ContractViolation("atvmf alpha must lie in [0, n-1], got " + std::to_string(alpha));
  }
  const Indices order = rank_ascending(cumulative_minkowski(win, p));
  return mean_of_ranked(win, order, static_cast<std::size_t>(alpha) + 1);
}

Vec3 bvdf(const Window& win, AcosMode mode) { return win[bvdf_index(win, mode)]; }

Vec3 gvdf(const Window& win, int k, AcosMode mode) {
  if (k < 1 || static_cast<std::size_t>(k) > win.size()) {
    throw ContractViolation("gvdf k must lie in [1, n], got " + std::to_string(k));
  }
  const Indices order = rank_ascending(cumulative_angular(win, mode));
  return mean_of_ranked(win, order, static_cast<std::size_t>(k));
}

Vec3 ddf(const Window& win, double gamma, double p, AcosMode mode) {
  return win[ddf_index(win, gamma, p, mode)];
}

Vec3 cbrf(const Window& win) { return win[cbrf_index(win)]; }

std::size_t basic_index(const Window& win, const DistanceKind& kind, AcosMode mode) {
  switch (kind.kind) {
    case DistanceKind::Kind::minkowski:
      return vmf_index(win, kind.p);
    case DistanceKind::Kind::angular:
      return bvdf_index(win, mode);
    case DistanceKind::Kind::directional:
      return ddf_index(win, kind.gamma, kind.p, mode);
  }
  return win.center_index();
}

Vec3 basic_filter(const Window& win, const DistanceKind& kind, AcosMode mode) {
  return win[basic_index(win, kind, mode)];
}

}  // namespace vecfilt
