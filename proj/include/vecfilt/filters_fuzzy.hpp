#pragma once

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

/// Membership function turning cumulative distances into fuzzy weights.
struct FuzzyWeightKind {
  enum class Kind { exponential, sigmoidal, nearest_neighbor, composite_nn };

  Kind kind = Kind::exponential;
  double gamma = 0.5;
  double beta = 1.0;
  /// Cumulative distance the membership acts on. Exponential uses Minkowski,
  /// sigmoidal uses angular; nearest-neighbor may use any kind.
  DistanceKind distance = DistanceKind::minkowski();

  /// exp(-l(i)^gamma / beta)
  static FuzzyWeightKind exponential(double gamma = 0.5, double beta = 1.0, double p = 2.0);
  /// beta / (1 + exp(a(i)))^gamma
  static FuzzyWeightKind sigmoidal(double gamma = 1.0, double beta = 2.0);
  /// (D_max - D_i) / (D_max - D_min)
  static FuzzyWeightKind nearest_neighbor(DistanceKind distance);
  /// Nearest-neighbor rule over summed composite distances.
  static FuzzyWeightKind composite_nn();
};

struct FuzzyWeights {
  /// Non-negative weights. Exponential weights are shifted by the smallest
  /// exponent, which only rescales them.
  Values raw;
  /// raw / sum(raw)
  Values normalized;
};

FuzzyWeights fuzzy_weights(const Window& win, const FuzzyWeightKind& kind, AcosMode mode);

/// Fuzzy weighted average. FVMF, FVDF, ANNF and ANNMF are this filter with
/// exponential, sigmoidal, nearest_neighbor(angular) and composite_nn weights.
Vec3 fwaf(const Window& win, const FuzzyWeightKind& kind, AcosMode mode);

/// Fuzzy ordered filter: weighted average over the k largest-weight pixels,
/// k = max(1, #{normalized weight > 1/n}). FOVMF and FOVDF use exponential and
/// sigmoidal weights.
Vec3 fovf(const Window& win, const FuzzyWeightKind& kind, AcosMode mode);

/// fovf with an explicit k, 1 <= k <= n.
Vec3 fovf_top_k(const Window& win, const FuzzyWeights& weights, std::size_t k);

}  // namespace vecfilt
