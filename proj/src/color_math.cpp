#include "vecfilt/color_math.hpp"

#include <algorithm>
#include <string>

#include "vecfilt/errors.hpp"

namespace vecfilt {

void DistanceKind::validate() const {
  if (kind != Kind::angular && !(p >= 1.0)) {
    throw ContractViolation("Minkowski order p must be >= 1, got " + std::to_string(p));
  }
  if (kind == Kind::directional && !(gamma >= 0.0 && gamma <= 1.0)) {
    throw ContractViolation("directional gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
}

double minkowski_distance(const Vec3& a, const Vec3& b, double p) {
  const double d0 = std::abs(a.r - b.r);
  const double d1 = std::abs(a.g - b.g);
  const double d2 = std::abs(a.b - b.b);
  if (p == 2.0) return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
  if (p == 1.0) return d0 + d1 + d2;
  if (std::isinf(p)) return std::max({d0, d1, d2});
  return std::pow(std::pow(d0, p) + std::pow(d1, p) + std::pow(d2, p), 1.0 / p);
}

double asin_fast(double x) {
  if (!(x >= 0.0 && x <= 0.5)) {
    throw ContractViolation("asin_fast domain is [0, 0.5], got " + std::to_string(x));
  }
  return detail::asin_poly(x);
}

double angular_distance(const Vec3& a, const Vec3& b, AcosMode mode) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return angle_from_cosine(dot(a, b) / (na * nb), mode);
}

double directional_pair_distance(const Vec3& a, const Vec3& b, double gamma, double p,
                                 AcosMode mode) {
  // std::pow(0, 0) == 1, which gives the pure-magnitude / pure-angle limits.
  return std::pow(angular_distance(a, b, mode), gamma) *
         std::pow(minkowski_distance(a, b, p), 1.0 - gamma);
}

double pair_distance(const Vec3& a, const Vec3& b, const DistanceKind& kind, AcosMode mode) {
  switch (kind.kind) {
    case DistanceKind::Kind::minkowski:
      return minkowski_distance(a, b, kind.p);
    case DistanceKind::Kind::angular:
      return angular_distance(a, b, mode);
    case DistanceKind::Kind::directional:
      return directional_pair_distance(a, b, kind.gamma, kind.p, mode);
  }
  return 0.0;
}

double composite_distance(const Vec3& a, const Vec3& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double cosine = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
  const double magnitude = 1.0 - std::abs(na - nb) / std::max(na, nb);
  return 1.0 - cosine * magnitude;
}

double cbrf_similarity(const Vec3& a, const Vec3& b) {
  const double na2 = dot(a, a);
  const double nb2 = dot(b, b);
  // ‖a‖‖b‖cos(theta) is the inner product.
  const double cross = 2.0 * dot(a, b);
  const double totality = na2 + nb2 + cross;
  if (totality <= 0.0) return 0.0;
  const double commonality = std::max(0.0, na2 + nb2 - cross);
  return std::sqrt(commonality / totality);
}

double fuzzy_metric_factor(double a, double b, double K, double alpha) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::pow((lo + K) / (hi + K), alpha);
}

double fuzzy_metric(const Vec3& a, const Vec3& b, double K, double alpha) {
  return fuzzy_metric_factor(a.r, b.r, K, alpha) * fuzzy_metric_factor(a.g, b.g, K, alpha) *
         fuzzy_metric_factor(a.b, b.b, K, alpha);
}

FuzzyMetricTable::FuzzyMetricTable(double K, double alpha)
    : K_(K), alpha_(alpha), table_(256 * 256) {
  if (!(K > 0.0) || !(alpha > 0.0)) {
    throw ContractViolation("fuzzy metric needs K > 0 and alpha > 0");
  }
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      table_[static_cast<std::size_t>(a) * 256 + b] = fuzzy_metric_factor(a, b, K, alpha);
    }
  }
}

double FuzzyMetricTable::operator()(const Vec3& a, const Vec3& b) const {
  return factor(static_cast<int>(a.r), static_cast<int>(b.r)) *
         factor(static_cast<int>(a.g), static_cast<int>(b.g)) *
         factor(static_cast<int>(a.b), static_cast<int>(b.b));
}

}  // namespace vecfilt
