#include "vecfilt/noise.hpp"

#include <cmath>

#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

// Stream slots. Channels use 0..2; the per-pixel categorical draw uses 3.
constexpr std::uint32_t kPixelSlot = 3;
// Draw indices within a slot.
constexpr std::uint32_t kDecision = 0;
constexpr std::uint32_t kValue = 1;

bool probability(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void NoiseConfig::validate() const {
  if (!probability(phi)) throw ContractViolation("noise probability must lie in [0, 1]");
  if (!(phi1 >= 0.0 && phi2 >= 0.0 && phi3 >= 0.0) || phi1 + phi2 + phi3 > 1.0 + 1e-12) {
    throw ContractViolation("channel shares must be >= 0 and sum to at most 1");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t noise_hash(std::uint64_t seed, std::uint32_t x, std::uint32_t y, std::uint32_t slot,
                         std::uint32_t draw) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ ((static_cast<std::uint64_t>(y) << 32) | x));
  h = mix64(h ^ ((static_cast<std::uint64_t>(slot) << 32) | draw));
  return h;
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::uint8_t impulse_value(std::uint64_t bits) {
  // Top bit picks the range; the remainder picks one of 11 values. The bias of
  // a 63-bit modulo 11 is below 2^-59.
  const auto offset = static_cast<std::uint8_t>((bits & 0x7fffffffffffffffULL) % 11);
  return (bits >> 63) ? static_cast<std::uint8_t>(245 + offset) : offset;
}

namespace {

std::uint8_t& channel(Rgb8& p, int k) { return k == 0 ? p.r : k == 1 ? p.g : p.b; }

}  // namespace

Image corrupt_uncorrelated(const Image& img, double phi, std::uint64_t seed) {
  if (!probability(phi)) throw ContractViolation("noise probability must lie in [0, 1]");
  Image out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      Rgb8& px = out.at(x, y);
      for (std::uint32_t k = 0; k < 3; ++k) {
        const auto ux = static_cast<std::uint32_t>(x);
        const auto uy = static_cast<std::uint32_t>(y);
        if (to_unit(noise_hash(seed, ux, uy, k, kDecision)) < phi) {
          channel(px, static_cast<int>(k)) = impulse_value(noise_hash(seed, ux, uy, k, kValue));
        }
      }
    }
  }
  return out;
}

Image corrupt_correlated(const Image& img, const NoiseConfig& cfg) {
  cfg.validate();
  const double phi = cfg.phi;
  // Cumulative bounds of the categorical draw: channel 1, 2, 3 alone, then all.
  const double c1 = cfg.phi1 * phi;
  const double c2 = c1 + cfg.phi2 * phi;
  const double c3 = c2 + cfg.phi3 * phi;
  Image out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const auto ux = static_cast<std::uint32_t>(x);
      const auto uy = static_cast<std::uint32_t>(y);
      const double u = to_unit(noise_hash(cfg.seed, ux, uy, kPixelSlot, kDecision));
      if (!(u < phi)) continue;
      Rgb8& px = out.at(x, y);
      auto hit = [&](std::uint32_t k) {
        channel(px, static_cast<int>(k)) = impulse_value(noise_hash(cfg.seed, ux, uy, k, kValue));
      };
      if (u < c1) {
        hit(0);
      } else if (u < c2) {
        hit(1);
      } else if (u < c3) {
        hit(2);
      } else {
        hit(0);
        hit(1);
        hit(2);
      }
    }
  }
  return out;
}

Image corrupt(const Image& img, const NoiseConfig& cfg) {
  if (cfg.model == NoiseModel::uncorrelated) return corrupt_uncorrelated(img, cfg.phi, cfg.seed);
  return corrupt_correlated(img, cfg);
}

}  // namespace vecfilt
