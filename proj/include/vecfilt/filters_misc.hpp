#pragma once

#include <array>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

/// Signal-dependent rank-order switching: the center is noisy when its distance
/// to the i-th lowest-ranked pixel exceeds thresholds[i] for any of the first
/// four ranks. Thresholds must be non-decreasing.
Vec3 vsdromf(const Window& win, const std::array<double, 4>& thresholds, double p = 2.0);

enum class AmnfKernel { exponential, gaussian };

/// Kernel-density weighted average with per-pixel bandwidths
/// h_i = max(1e-6, n^(-k/c) sum_j ‖x_i - x_j‖_1).
Vec3 amnf(const Window& win, AmnfKernel kernel, double k = 0.33, int c = 3);

/// Center-excluding vector median with a privilege threshold for the center.
Vec3 fmvmf(const Window& win, double threshold, double p = 2.0);

/// AVMF (Minkowski kind) and ABVDF (angular kind): the center is noisy when its
/// distance to the mean of the k lowest-ranked pixels exceeds `threshold`.
Vec3 avf_adaptive(const Window& win, const DistanceKind& kind, double threshold, int k,
                  AcosMode mode);

/// Fuzzy-similarity counterpart of fmvmf, evaluated with the direct formula.
Vec3 ffnrf(const Window& win, double K = 1024.0, double alpha = 3.5);

/// Same filter using precomputed channel factors. Windows with non-integral
/// channels fall back to the direct formula.
Vec3 ffnrf(const Window& win, const FuzzyMetricTable& table);

}  // namespace vecfilt
