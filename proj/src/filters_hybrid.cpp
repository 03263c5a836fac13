#include "vecfilt/filters_hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "vecfilt/errors.hpp"
#include "vecfilt/filters_basic.hpp"
#include "vecfilt/window_ops.hpp"

namespace vecfilt {

Vec3 exvmf(const Window& win, double p) {
  const auto kind = DistanceKind::minkowski(p);
  const Values l = cumulative_minkowski(win, p);
  const std::size_t best = argmin(l);
  const Vec3 mean = window_mean(win);
  if (cumulative_distance(mean, win, kind, AcosMode::reference) <= l[best]) return mean;
  return win[best];
}

Vec3 hdf(const Window& win, double p, AcosMode mode) {
  const Vec3 median = vmf(win, p);
  const Vec3 directional = bvdf(win, mode);
  if (median == directional) return median;
  const double nd = norm(directional);
  if (nd == 0.0) return median;
  return (norm(median) / nd) * directional;
}

Vec3 ahdf(const Window& win, double p, AcosMode mode) {
  const Vec3 median = vmf(win, p);
  const Vec3 directional = bvdf(win, mode);
  if (median == directional) return median;
  const double nd = norm(directional);
  if (nd == 0.0) return median;
  const Vec3 out1 = (norm(median) / nd) * directional;
  const Vec3 out2 = (norm(window_mean(win)) / nd) * directional;
  const auto kind = DistanceKind::minkowski(p);
  if (cumulative_distance(out1, win, kind, mode) <= cumulative_distance(out2, win, kind, mode)) {
    return out1;
  }
  return out2;
}

void RationalParams::validate() const {
  if (alpha1 + alpha2 + alpha3 != 0.0) {
    throw ContractViolation("rational hybrid alphas must sum to zero");
  }
  if (!(beta1 > 0.0) || !(beta2 > 0.0)) {
    throw ContractViolation("rational hybrid betas must be positive");
  }
  if (!(gamma_dd >= 0.0 && gamma_dd <= 1.0)) {
    throw ContractViolation("rational hybrid gamma_dd must lie in [0, 1]");
  }
}

namespace {

// Mask membership on a side x side window, generalizing the 3x3 masks.
Indices plus_mask(const Window& win) {
  Indices idx;
  const int s = win.side();
  const int c = s / 2;
  for (int y = 0; y < s; ++y) {
    for (int x = 0; x < s; ++x) {
      if (x == c || y == c) idx.push_back(static_cast<std::size_t>(y * s + x));
    }
  }
  return idx;
}

Indices cross_mask(const Window& win) {
  Indices idx;
  const int s = win.side();
  for (int y = 0; y < s; ++y) {
    for (int x = 0; x < s; ++x) {
      if (x == y || x + y == s - 1) idx.push_back(static_cast<std::size_t>(y * s + x));
    }
  }
  return idx;
}

Indices full_mask(const Window& win) {
  Indices idx(win.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

// sum_j mask_weight_j * dist(x_i, x_j) over the subset; directional kind
// blends the angular and magnitude sums once.
Values subset_cumulative(const Window& win, const Indices& idx, const Values& mask_weights,
                         const DistanceKind& kind, AcosMode mode) {
  const std::size_t m = idx.size();
  Values l(m, 0.0);
  Values a(m, 0.0);
  const bool need_l = kind.kind != DistanceKind::Kind::angular;
  const bool need_a = kind.kind != DistanceKind::Kind::minkowski;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Vec3& xi = win[idx[i]];
      const Vec3& xj = win[idx[j]];
      if (need_l) {
        const double d = minkowski_distance(xi, xj, kind.p);
        l[i] += mask_weights[j] * d;
        l[j] += mask_weights[i] * d;
      }
      if (need_a) {
        const double d = angular_distance(xi, xj, mode);
        a[i] += mask_weights[j] * d;
        a[j] += mask_weights[i] * d;
      }
    }
  }
  switch (kind.kind) {
    case DistanceKind::Kind::minkowski:
      return l;
    case DistanceKind::Kind::angular:
      return a;
    case DistanceKind::Kind::directional:
      for (std::size_t i = 0; i < m; ++i) {
        a[i] = std::pow(a[i], kind.gamma) * std::pow(l[i], 1.0 - kind.gamma);
      }
      return a;
  }
  return l;
}

Values center_weights(const Window& win, const Indices& idx, double center_weight) {
  Values w(idx.size(), 1.0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] == win.center_index()) w[i] = center_weight;
  }
  return w;
}

Vec3 crisp_subfilter(const Window& win, const Indices& idx, double center_weight, double p) {
  const Values w = center_weights(win, idx, center_weight);
  const Values sums = subset_cumulative(win, idx, w, DistanceKind::minkowski(p), AcosMode::reference);
  return win[idx[argmin(sums)]];
}

// Fuzzy weights 2 / (1 + exp(s_i)) evaluated as exp(-softplus(s_i)) relative to
// the largest weight, which is exact after normalization and cannot underflow
// to an all-zero vector.
Vec3 fuzzy_subfilter(const Window& win, const Indices& idx, double center_weight,
                     const DistanceKind& kind, double gamma, AcosMode mode) {
  const Values unit(idx.size(), 1.0);
  const Values d = subset_cumulative(win, idx, unit, kind, mode);
  Values log_w(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double s = std::pow(d[i], gamma);
    const double softplus = std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s)));
    log_w[i] = -softplus;
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  double total = 0.0;
  Vec3 sum;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    double w = std::exp(log_w[i] - top);
    if (idx[i] == win.center_index()) w *= center_weight;
    total += w;
    sum += w * win[idx[i]];
  }
  return sum / total;
}

DistanceKind flavor_kind(RationalFlavor flavor, const RationalParams& params) {
  switch (flavor) {
    case RationalFlavor::vmrhf:
    case RationalFlavor::fvmrhf:
      return DistanceKind::minkowski(params.p);
    case RationalFlavor::fvdrhf:
      return DistanceKind::angular();
    case RationalFlavor::fddrhf:
      return DistanceKind::directional(params.gamma_dd, params.p);
  }
  return DistanceKind::minkowski(params.p);
}

constexpr double kMaskCenterWeight = 3.0;

}  // namespace

RationalSubfilters rational_subfilters(const Window& win, RationalFlavor flavor,
                                       const RationalParams& params, AcosMode mode) {
  const Indices plus = plus_mask(win);
  const Indices all = full_mask(win);
  const Indices cross = cross_mask(win);
  if (flavor == RationalFlavor::vmrhf) {
    return {crisp_subfilter(win, plus, 1.0, params.p),
            crisp_subfilter(win, all, kMaskCenterWeight, params.p),
            crisp_subfilter(win, cross, 1.0, params.p)};
  }
  const DistanceKind kind = flavor_kind(flavor, params);
  const double g = params.gamma_fuzzy;
  return {fuzzy_subfilter(win, plus, 1.0, kind, g, mode),
          fuzzy_subfilter(win, all, kMaskCenterWeight, kind, g, mode),
          fuzzy_subfilter(win, cross, 1.0, kind, g, mode)};
}

Vec3 rational_hybrid(const Window& win, RationalFlavor flavor, const RationalParams& params,
                     AcosMode mode) {
  const RationalSubfilters sub = rational_subfilters(win, flavor, params, mode);
  double delta = 0.0;
  switch (flavor) {
    case RationalFlavor::vmrhf:
    case RationalFlavor::fvmrhf:
      delta = minkowski_distance(sub.plus, sub.cross, 2.0);
      break;
    case RationalFlavor::fvdrhf:
      delta = angular_distance(sub.plus, sub.cross, mode);
      break;
    case RationalFlavor::fddrhf:
      delta = directional_pair_distance(sub.plus, sub.cross, params.gamma_dd, 2.0, mode);
      break;
  }
  const Vec3 numerator =
      params.alpha1 * sub.plus + params.alpha2 * sub.center + params.alpha3 * sub.cross;
  return sub.center + numerator / (params.beta1 + params.beta2 * delta);
}

Vec3 kvmf(const Window& win, double h, double p) {
  if (!(h > 0.0)) throw ContractViolation("kvmf kernel width must be positive");
  const Vec3 median = vmf(win, p);
  const Vec3& center = win.center();
  if (median == center) return center;
  const double mu = std::exp(-minkowski_distance(center, median, 2.0) / h);
  return mu * center + (1.0 - mu) * median;
}

double estimate_kernel_width(const Image& img, double beta) {
  if (img.empty()) throw ContractViolation("kernel width needs a non-empty image");
  Vec3 mean;
  for (const Rgb8& px : img.pixels()) mean += to_vec(px);
  const double n = static_cast<double>(img.size());
  mean = mean / n;
  double scatter = 0.0;
  for (const Rgb8& px : img.pixels()) {
    const Vec3 d = to_vec(px) - mean;
    scatter += dot(d, d);
  }
  return std::max(kKernelWidthFloor, beta * std::sqrt(scatter / (8.0 * n)));
}

}  // namespace vecfilt
