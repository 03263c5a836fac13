#include "vecfilt/filters_fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vecfilt/errors.hpp"
#include "vecfilt/window_ops.hpp"

namespace vecfilt {

FuzzyWeightKind FuzzyWeightKind::exponential(double gamma, double beta, double p) {
  return {Kind::exponential, gamma, beta, DistanceKind::minkowski(p)};
}

FuzzyWeightKind FuzzyWeightKind::sigmoidal(double gamma, double beta) {
  return {Kind::sigmoidal, gamma, beta, DistanceKind::angular()};
}

FuzzyWeightKind FuzzyWeightKind::nearest_neighbor(DistanceKind distance) {
  return {Kind::nearest_neighbor, 1.0, 1.0, distance};
}

FuzzyWeightKind FuzzyWeightKind::composite_nn() {
  return {Kind::composite_nn, 1.0, 1.0, DistanceKind::minkowski()};
}

namespace {

Values nearest_neighbor_weights(const Values& d) {
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  const double range = *hi - *lo;
  Values w(d.size(), 1.0);
  if (!(range > 0.0)) return w;
  for (std::size_t i = 0; i < d.size(); ++i) w[i] = (*hi - d[i]) / range;
  return w;
}

Values composite_sums(const Window& win) {
  Values sums(win.size(), 0.0);
  for (std::size_t i = 0; i < win.size(); ++i) {
    for (std::size_t j = i + 1; j < win.size(); ++j) {
      const double d = composite_distance(win[i], win[j]);
      sums[i] += d;
      sums[j] += d;
    }
  }
  return sums;
}

}  // namespace

FuzzyWeights fuzzy_weights(const Window& win, const FuzzyWeightKind& kind, AcosMode mode) {
  if (!(kind.gamma > 0.0) || !(kind.beta > 0.0)) {
    throw ContractViolation("fuzzy membership needs gamma > 0 and beta > 0");
  }
  FuzzyWeights out;
  switch (kind.kind) {
    case FuzzyWeightKind::Kind::exponential: {
      Values s = cumulative_distances(win, kind.distance, mode);
      for (double& v : s) v = std::pow(v, kind.gamma);
      const double smin = *std::min_element(s.begin(), s.end());
      out.raw.resize(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) out.raw[i] = std::exp(-(s[i] - smin) / kind.beta);
      break;
    }
    case FuzzyWeightKind::Kind::sigmoidal: {
      const Values a = cumulative_distances(win, kind.distance, mode);
      out.raw.resize(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        out.raw[i] = kind.beta / std::pow(1.0 + std::exp(a[i]), kind.gamma);
      }
      break;
    }
    case FuzzyWeightKind::Kind::nearest_neighbor:
      out.raw = nearest_neighbor_weights(cumulative_distances(win, kind.distance, mode));
      break;
    case FuzzyWeightKind::Kind::composite_nn:
      out.raw = nearest_neighbor_weights(composite_sums(win));
      break;
  }
  const double total = std::accumulate(out.raw.begin(), out.raw.end(), 0.0);
  out.normalized.resize(out.raw.size());
  for (std::size_t i = 0; i < out.raw.size(); ++i) {
    out.normalized[i] = total > 0.0 ? out.raw[i] / total : 1.0 / static_cast<double>(win.size());
  }
  return out;
}

Vec3 fwaf(const Window& win, const FuzzyWeightKind& kind, AcosMode mode) {
  return weighted_average(win, fuzzy_weights(win, kind, mode).raw);
}

Vec3 fovf_top_k(const Window& win, const FuzzyWeights& weights, std::size_t k) {
  if (k < 1 || k > win.size()) throw ContractViolation("fovf k must lie in [1, n]");
  const Values& w = weights.normalized;
  Indices order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  const Vec3& anchor = win[order[0]];
  double total = 0.0;
  Vec3 sum;
  for (std::size_t i = 0; i < k; ++i) {
    total += w[order[i]];
    sum += w[order[i]] * (win[order[i]] - anchor);
  }
  if (!(total > 0.0)) return mean_of_ranked(win, order, k);
  return anchor + sum / total;
}

Vec3 fovf(const Window& win, const FuzzyWeightKind& kind, AcosMode mode) {
  const FuzzyWeights weights = fuzzy_weights(win, kind, mode);
  const double threshold = 1.0 / static_cast<double>(win.size());
  const auto above = std::count_if(weights.normalized.begin(), weights.normalized.end(),
                                   [&](double v) { return v > threshold; });
  return fovf_top_k(win, weights, std::max<std::size_t>(1, static_cast<std::size_t>(above)));
}

}  // namespace vecfilt
