#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace vecfilt {

/// A color vector. Integer pixels are lifted losslessly; filter outputs may
/// be fractional until the driver quantizes them.
struct Vec3 {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  constexpr double operator[](int k) const { return k == 0 ? r : (k == 1 ? g : b); }

  constexpr Vec3& operator+=(const Vec3& o) {
    r += o.r;
    g += o.g;
    b += o.b;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    r -= o.r;
    g -= o.g;
    b -= o.b;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    r *= s;
    g *= s;
    b *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator/(Vec3 a, double s) { return {a.r / s, a.g / s, a.b / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.r * b.r + a.g * b.g + a.b * b.b; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

enum class AcosMode { approximate, reference };

/// Selects how two color vectors are compared. Directional distance needs
/// both the Minkowski order and the angle/magnitude blend exponent.
struct DistanceKind {
  enum class Kind { minkowski, angular, directional };

  Kind kind = Kind::minkowski;
  double p = 2.0;
  double gamma = 0.5;

  static DistanceKind minkowski(double p = 2.0) { return {Kind::minkowski, p, 0.0}; }
  static DistanceKind angular() { return {Kind::angular, 2.0, 1.0}; }
  static DistanceKind directional(double gamma = 0.5, double p = 2.0) {
    return {Kind::directional, p, gamma};
  }

  /// Throws ContractViolation when p < 1 or gamma is outside [0, 1].
  void validate() const;
};

double minkowski_distance(const Vec3& a, const Vec3& b, double p);

namespace detail {

// Third-degree minimax fits of asin and acos on [0, 0.5].
constexpr double asin_poly(double x) {
  return -0.67921302e-4 + (1.003729762 + (-0.309031329e-1 + 0.2356774247 * x) * x) * x;
}
constexpr double acos_poly(double x) {
  return 1.570864248 + (-1.003729768 + (0.309031763e-1 - 0.2356774861 * x) * x) * x;
}

inline double acos_fast_nonneg(double x) {
  if (x <= 0.5) return acos_poly(x);
  return 2.0 * asin_poly(std::sqrt((1.0 - x) * 0.5));
}

}  // namespace detail

inline constexpr double kPi = 3.14159265358979323846;

/// Polynomial asin; throws ContractViolation outside [0, 0.5].
double asin_fast(double x);

/// Polynomial acos. Input is clamped to [-1, 1]; |x| > 0.5 goes through
/// acos(x) = 2 asin(sqrt((1-x)/2)) and x < 0 through pi - acos(-x).
/// Both branches are evaluated and selected so loops over it vectorize.
inline double acos_fast(double x) {
  x = x > 1.0 ? 1.0 : x;
  x = x < -1.0 ? -1.0 : x;
  const double ax = std::abs(x);
  const double near_zero = detail::acos_poly(ax);
  const double near_one = 2.0 * detail::asin_poly(std::sqrt((1.0 - ax) * 0.5));
  const double r = ax <= 0.5 ? near_zero : near_one;
  return x < 0.0 ? kPi - r : r;
}

inline double acos_with(double x, AcosMode mode) {
  if (x > 1.0) x = 1.0;
  if (x < -1.0) x = -1.0;
  return mode == AcosMode::approximate ? acos_fast(x) : std::acos(x);
}

/// Angle for a cosine: acos_with clamped below at 0.
inline double angle_from_cosine(double c, AcosMode mode) {
  const double a = acos_with(c, mode);
  return a > 0.0 ? a : 0.0;
}

/// Angle between a and b; 0 when either vector is black. Never negative: the
/// fast acos dips to about -1.4e-4 near 1 and is clamped at 0 here.
double angular_distance(const Vec3& a, const Vec3& b, AcosMode mode);

/// Pairwise directional distance A^gamma * L_p^(1-gamma), with 0^0 = 1.
double directional_pair_distance(const Vec3& a, const Vec3& b, double gamma, double p,
                                 AcosMode mode);

/// Distance between two vectors under `kind`. For directional kind this is the
/// pairwise product form.
double pair_distance(const Vec3& a, const Vec3& b, const DistanceKind& kind, AcosMode mode);

/// 1 - cos(a,b) * (1 - |‖a‖-‖b‖| / max(‖a‖,‖b‖)).
double composite_distance(const Vec3& a, const Vec3& b);

/// Commonality/totality ratio, evaluated in its radical (law of cosines) form.
double cbrf_similarity(const Vec3& a, const Vec3& b);

/// Product over channels of ((min + K) / (max + K))^alpha.
double fuzzy_metric(const Vec3& a, const Vec3& b, double K, double alpha);

/// Precomputed per-channel factors for fuzzy_metric on 8-bit channels.
/// Immutable after construction; lookups agree bit-for-bit with the direct path.
class FuzzyMetricTable {
 public:
  FuzzyMetricTable(double K, double alpha);

  double K() const { return K_; }
  double alpha() const { return alpha_; }
  double factor(int a, int b) const { return table_[static_cast<std::size_t>(a) * 256 + b]; }

  /// Requires integral channels in [0, 255].
  double operator()(const Vec3& a, const Vec3& b) const;

 private:
  double K_;
  double alpha_;
  std::vector<double> table_;
};

/// Per-channel factor ((min + K) / (max + K))^alpha shared by both paths.
double fuzzy_metric_factor(double a, double b, double K, double alpha);

}  // namespace vecfilt
