#pragma once

#include <optional>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

// Switching filters output either the untouched center pixel or the basic
// filter (VMF / BVDF / DDF by distance kind) depending on a noise test.

/// Local contrast probabilities P_i, entropies H_i = -P_i log P_i and entropy
/// shares T_i = H_i / sum H. Deviations are measured from the window mean.
struct EntropyState {
  Values probability;
  Values entropy;
  Values share;
};

inline constexpr double kFlatTolerance = 1e-12;

/// Empty when the summed deviation is below kFlatTolerance (flat window).
std::optional<EntropyState> entropy_state(const Window& win, const DistanceKind& kind,
                                          AcosMode mode);

/// Center is noisy when P_C > T_C.
Vec3 entropy_vf(const Window& win, const DistanceKind& kind, AcosMode mode);

/// Peer group filter: the center is noisy when any of the first m gaps of the
/// sorted center distances exceeds `threshold`. m = 0 selects (side + 1) / 2.
Vec3 pgf(const Window& win, double threshold, int m = 0, double p = 2.0);

/// Fast peer group filter: the center is kept as soon as m neighbors lie within
/// `threshold` of it.
Vec3 fpgf(const Window& win, double threshold, int m, double p = 2.0);

enum class SigmaReference { mean, rank };

struct SigmaParams {
  double lambda = 4.0;
  SigmaReference reference = SigmaReference::mean;
  bool adaptive = false;
};

/// Vector sigma filters.
///   non-adaptive: noisy iff cum(C) >= (1 + lambda/n) cum(mean)        (mean)
///                        or cum(C) >= (1 + lambda/(n-1)) cum(basic)   (rank)
///   adaptive:     noisy iff dist(x_C, ref) >= sigma, sigma^2 the mean squared
///                 distance to ref (1/n for mean, 1/(n-1) for rank).
/// A reference quantity below kFlatTolerance keeps the center.
Vec3 sigma_vf(const Window& win, const DistanceKind& kind, const SigmaParams& params,
              AcosMode mode);

}  // namespace vecfilt
