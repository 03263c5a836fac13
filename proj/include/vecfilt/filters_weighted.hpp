#pragma once

#include <cstddef>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

/// Center-weighted vector filter with smoothing parameter k in [1, C], where
/// C = (n + 1) / 2. The center weight is n - 2k + 2 and every other weight is 1,
/// so k = 1 is the identity and k = C the plain VMF/BVDF/DDF.
std::size_t cwvf_index(const Window& win, int k, const DistanceKind& kind, AcosMode mode);
Vec3 cwvf(const Window& win, int k, const DistanceKind& kind, AcosMode mode);

/// x_VMF when l(x_VMF) < w * l(C), otherwise the center pixel.
Vec3 mcwvmf(const Window& win, double w, double p = 2.0);

/// Adaptive center-weighted switching: the center is noisy when the summed
/// distance from the center to the cwvf outputs for k = lambda..lambda+2
/// exceeds `threshold`; noisy centers are replaced by the basic filter.
Vec3 acwvf(const Window& win, const DistanceKind& kind, int lambda, double threshold,
           AcosMode mode);

}  // namespace vecfilt
