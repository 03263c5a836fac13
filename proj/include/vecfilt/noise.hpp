#pragma once

#include <cstdint>

#include "vecfilt/image.hpp"

namespace vecfilt {

enum class NoiseModel { uncorrelated, correlated };

struct NoiseConfig {
  NoiseModel model = NoiseModel::correlated;
  /// Per-channel probability (uncorrelated) or per-pixel probability (correlated).
  double phi = 0.1;
  /// Single-channel shares of a corrupted pixel; the rest corrupts all three.
  double phi1 = 0.25;
  double phi2 = 0.25;
  double phi3 = 0.25;
  std::uint64_t seed = 0;

  /// Throws ContractViolation when a probability is out of range.
  void validate() const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based hash of (seed, x, y, slot, draw). Every random decision is a
/// pure function of these values, so results never depend on visit order.
std::uint64_t noise_hash(std::uint64_t seed, std::uint32_t x, std::uint32_t y, std::uint32_t slot,
                         std::uint32_t draw);

/// Uniform double in [0, 1) from the top 53 bits.
double to_unit(std::uint64_t bits);

/// Uniform integer in [0,10] or [245,255], each range with probability 1/2.
std::uint8_t impulse_value(std::uint64_t bits);

Image corrupt_uncorrelated(const Image& img, double phi, std::uint64_t seed);
Image corrupt_correlated(const Image& img, const NoiseConfig& cfg);
Image corrupt(const Image& img, const NoiseConfig& cfg);

}  // namespace vecfilt
