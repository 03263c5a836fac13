#pragma once

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

/// Mean if its cumulative distance does not exceed the vector median's, else
/// the vector median.
Vec3 exvmf(const Window& win, double p = 2.0);

/// VMF magnitude on the BVDF direction. Returns the VMF output when the two
/// agree or the BVDF output is black.
Vec3 hdf(const Window& win, double p, AcosMode mode);

/// Like hdf but also tries the mean's magnitude on the BVDF direction and keeps
/// the candidate with the smaller cumulative distance (ties to the VMF one).
Vec3 ahdf(const Window& win, double p, AcosMode mode);

enum class RationalFlavor { vmrhf, fvmrhf, fvdrhf, fddrhf };

struct RationalParams {
  double alpha1 = 1.0;
  double alpha2 = -2.0;
  double alpha3 = 1.0;
  double beta1 = 3.0;
  double beta2 = 3.0;
  /// Exponent in the fuzzy weights 2 / (1 + exp(D(i)^gamma)).
  double gamma_fuzzy = 1.0;
  /// Angle/magnitude blend for the directional flavor.
  double gamma_dd = 0.5;
  double p = 2.0;

  /// Throws ContractViolation unless the alphas sum to zero and betas are positive.
  void validate() const;
};

/// Outputs of the three sub-filters: plus-shaped mask, full mask with center
/// weight 3, and diagonal-cross mask.
struct RationalSubfilters {
  Vec3 plus;
  Vec3 center;
  Vec3 cross;
};

RationalSubfilters rational_subfilters(const Window& win, RationalFlavor flavor,
                                       const RationalParams& params, AcosMode mode);

/// center + (a1*plus + a2*center + a3*cross) / (b1 + b2 * delta(plus, cross)),
/// delta being L2 (vmrhf, fvmrhf), the angle (fvdrhf) or the directional pair
/// distance (fddrhf).
Vec3 rational_hybrid(const Window& win, RationalFlavor flavor, const RationalParams& params,
                     AcosMode mode);

/// mu * x_C + (1 - mu) * x_VMF with mu = exp(-‖x_C - x_VMF‖ / h).
Vec3 kvmf(const Window& win, double h, double p = 2.0);

inline constexpr double kKernelWidthFloor = 1e-6;

/// beta * sqrt(sum ‖x_i - mean‖^2 / (8N)), floored at kKernelWidthFloor.
double estimate_kernel_width(const Image& img, double beta = 0.5);

}  // namespace vecfilt
