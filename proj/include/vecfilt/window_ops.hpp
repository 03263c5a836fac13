#pragma once

#include <cstddef>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

// Cumulative (aggregate) distances of window pixels to the whole window.
//
// For the directional kind the aggregate is (sum A)^gamma * (sum L_p)^(1-gamma),
// i.e. the angular and magnitude sums are formed first and combined once,
// not a sum of pairwise directional distances.

/// l(i) for every window pixel.
Values cumulative_minkowski(const Window& win, double p);
/// a(i) for every window pixel.
Values cumulative_angular(const Window& win, AcosMode mode);
/// l(i), a(i) or d(i) depending on `kind`.
Values cumulative_distances(const Window& win, const DistanceKind& kind, AcosMode mode);

/// Same aggregates with per-pixel weights on the inner sum: sum_j w_j dist(x_i, x_j).
Values weighted_cumulative_distances(const Window& win, const DistanceKind& kind,
                                     AcosMode mode, const Values& weights);

/// Cumulative distance from an arbitrary query vector to all window pixels.
double cumulative_distance(const Vec3& v, const Window& win, const DistanceKind& kind,
                           AcosMode mode);

/// Index of the smallest value; ties resolve to the lowest index.
std::size_t argmin(const Values& values);
/// Index of the largest value; ties resolve to the lowest index.
std::size_t argmax(const Values& values);

/// Indices sorted ascending by value, ties kept in index order.
Indices rank_ascending(const Values& values);

/// Window indices ordered by cumulative distance (reduced ordering). The first
/// element is the argmin of the cumulative distance.
Indices rank_window(const Window& win, const DistanceKind& kind, AcosMode mode);

/// Arithmetic mean of all window pixels.
Vec3 window_mean(const Window& win);

/// Arithmetic mean of the first `count` pixels listed in `order`.
Vec3 mean_of_ranked(const Window& win, const Indices& order, std::size_t count);

/// Sum_i w_i x_i / sum_i w_i; uniform weights if the weights sum to zero.
Vec3 weighted_average(const Window& win, const Values& weights);

}  // namespace vecfilt
