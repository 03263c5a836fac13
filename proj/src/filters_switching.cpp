#include "vecfilt/filters_switching.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vecfilt/errors.hpp"
#include "vecfilt/filters_basic.hpp"
#include "vecfilt/window_ops.hpp"

namespace vecfilt {

namespace {

using Kind = DistanceKind::Kind;

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

std::optional<EntropyState> entropy_state(const Window& win, const DistanceKind& kind,
                                          AcosMode mode) {
  const Vec3 mean = window_mean(win);
  Values dev(win.size());
  double total = 0.0;
  for (std::size_t i = 0; i < win.size(); ++i) {
    dev[i] = pair_distance(win[i], mean, kind, mode);
    total += dev[i];
  }
  if (total < kFlatTolerance) return std::nullopt;

  EntropyState st;
  st.probability.resize(win.size());
  st.entropy.resize(win.size());
  st.share.resize(win.size());
  double entropy_total = 0.0;
  for (std::size_t i = 0; i < win.size(); ++i) {
    st.probability[i] = dev[i] / total;
    st.entropy[i] = -plogp(st.probability[i]);
    entropy_total += st.entropy[i];
  }
  // A single nonzero deviation carries all of the probability and none of the
  // entropy; its share is taken as 0.
  for (std::size_t i = 0; i < win.size(); ++i) {
    st.share[i] = entropy_total > 0.0 ? st.entropy[i] / entropy_total : 0.0;
  }
  return st;
}

Vec3 entropy_vf(const Window& win, const DistanceKind& kind, AcosMode mode) {
  const auto st = entropy_state(win, kind, mode);
  if (!st) return win.center();
  const std::size_t c = win.center_index();
  if (st->probability[c] > st->share[c]) return basic_filter(win, kind, mode);
  return win.center();
}

Vec3 pgf(const Window& win, double threshold, int m, double p) {
  if (!(threshold > 0.0)) throw ContractViolation("pgf threshold must be positive");
  if (m == 0) m = (win.side() + 1) / 2;
  if (m < 1 || static_cast<std::size_t>(m) >= win.size()) {
    throw ContractViolation("pgf m must lie in [1, n-1], got " + std::to_string(m));
  }
  const Vec3& center = win.center();
  Values dist(win.size());
  for (std::size_t i = 0; i < win.size(); ++i) dist[i] = minkowski_distance(center, win[i], p);
  const auto upto = dist.begin() + m + 1;
  std::partial_sort(dist.begin(), upto, dist.end());
  for (int i = 0; i < m; ++i) {
    if (dist[i + 1] - dist[i] > threshold) return vmf(win, p);
  }
  return center;
}

Vec3 fpgf(const Window& win, double threshold, int m, double p) {
  if (!(threshold > 0.0)) throw ContractViolation("fpgf threshold must be positive");
  if (m < 1 || static_cast<std::size_t>(m) >= win.size()) {
    throw ContractViolation("fpgf m must lie in [1, n-1], got " + std::to_string(m));
  }
  const Vec3& center = win.center();
  const std::size_t c = win.center_index();
  int peers = 0;
  for (std::size_t i = 0; i < win.size(); ++i) {
    if (i == c) continue;
    if (minkowski_distance(center, win[i], p) <= threshold && ++peers >= m) return center;
  }
  return vmf(win, p);
}

namespace {

// Per-pair squared contributions for the adaptive sigma: the directional kind
// keeps angular and magnitude parts apart until the final blend.
struct SquaredSpread {
  double angular = 0.0;
  double magnitude = 0.0;
};

SquaredSpread squared_spread(const Window& win, const Vec3& ref, const DistanceKind& kind,
                             AcosMode mode) {
  SquaredSpread s;
  for (const Vec3& x : win) {
    if (kind.kind != Kind::angular) {
      const double l = minkowski_distance(x, ref, kind.p);
      s.magnitude += l * l;
    }
    if (kind.kind != Kind::minkowski) {
      const double a = angular_distance(x, ref, mode);
      s.angular += a * a;
    }
  }
  return s;
}

double sigma_from_spread(const SquaredSpread& s, const DistanceKind& kind, double denom) {
  switch (kind.kind) {
    case Kind::minkowski:
      return std::sqrt(s.magnitude / denom);
    case Kind::angular:
      return std::sqrt(s.angular / denom);
    case Kind::directional:
      return std::sqrt(std::pow(s.angular / denom, kind.gamma) *
                       std::pow(s.magnitude / denom, 1.0 - kind.gamma));
  }
  return 0.0;
}

}  // namespace

Vec3 sigma_vf(const Window& win, const DistanceKind& kind, const SigmaParams& params,
              AcosMode mode) {
  if (!(params.lambda > 0.0)) throw ContractViolation("sigma lambda must be positive");
  const double n = static_cast<double>(win.size());
  const Vec3& center = win.center();

  if (!params.adaptive) {
    if (params.reference == SigmaReference::mean) {
      const double ref = cumulative_distance(window_mean(win), win, kind, mode);
      if (ref < kFlatTolerance) return center;
      const double self = cumulative_distance(center, win, kind, mode);
      if (self >= (1.0 + params.lambda / n) * ref) return basic_filter(win, kind, mode);
      return center;
    }
    const Values cum = cumulative_distances(win, kind, mode);
    const std::size_t best = argmin(cum);
    if (cum[best] < kFlatTolerance) return center;
    if (cum[win.center_index()] >= (1.0 + params.lambda / (n - 1.0)) * cum[best]) return win[best];
    return center;
  }

  if (params.reference == SigmaReference::mean) {
    const Vec3 mean = window_mean(win);
    const double sigma = sigma_from_spread(squared_spread(win, mean, kind, mode), kind, n);
    if (sigma < kFlatTolerance) return center;
    if (pair_distance(center, mean, kind, mode) >= sigma) return basic_filter(win, kind, mode);
    return center;
  }
  const Vec3 ref = basic_filter(win, kind, mode);
  const double sigma = sigma_from_spread(squared_spread(win, ref, kind, mode), kind, n - 1.0);
  if (sigma < kFlatTolerance) return center;
  if (pair_distance(center, ref, kind, mode) >= sigma) return ref;
  return center;
}

}  // namespace vecfilt
