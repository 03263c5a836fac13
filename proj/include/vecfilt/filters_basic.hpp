#pragma once

#include <cstddef>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

// Reduced-ordering selectors. All ties resolve to the lowest (row-major) index.

std::size_t vmf_index(const Window& win, double p = 2.0);
std::size_t bvdf_index(const Window& win, AcosMode mode);
std::size_t ddf_index(const Window& win, double gamma, double p, AcosMode mode);
std::size_t cbrf_index(const Window& win);

/// Vector median: minimizer of the cumulative Minkowski distance.
Vec3 vmf(const Window& win, double p = 2.0);

/// Mean of the 1 + alpha lowest-ranked pixels. Throws ContractViolation
/// unless 0 <= alpha <= n - 1.
Vec3 atvmf(const Window& win, int alpha, double p = 2.0);

/// Minimizer of the cumulative angle.
Vec3 bvdf(const Window& win, AcosMode mode);

/// Mean of the k lowest angular-ranked pixels (the magnitude stage is an
/// arithmetic mean). Throws ContractViolation unless 1 <= k <= n.
Vec3 gvdf(const Window& win, int k, AcosMode mode);

/// Minimizer of a(i)^gamma * l(i)^(1-gamma).
Vec3 ddf(const Window& win, double gamma, double p, AcosMode mode);

/// Minimizer of the summed difference/sum norm ratio.
Vec3 cbrf(const Window& win);

/// The basic filter matching a distance kind: VMF, BVDF or DDF.
std::size_t basic_index(const Window& win, const DistanceKind& kind, AcosMode mode);
Vec3 basic_filter(const Window& win, const DistanceKind& kind, AcosMode mode);

}  // namespace vecfilt
