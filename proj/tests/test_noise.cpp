#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vecfilt/errors.hpp"
#include "vecfilt/noise.hpp"

using namespace vecfilt;

namespace {

bool impulse(std::uint8_t v) { return v <= 10 || v >= 245; }

// Mid-gray source: any changed channel is a detected impulse.
Image gray(int w, int h) { return Image(w, h, Rgb8{128, 128, 128}); }

}  // namespace

TEST_CASE("zero probability leaves the image untouched") {
  std::mt19937_64 rng(101);
  const Image img = testing::random_image(rng, 32, 32);
  CHECK(corrupt_uncorrelated(img, 0.0, 5) == img);
  NoiseConfig cfg;
  cfg.phi = 0.0;
  CHECK(corrupt_correlated(img, cfg) == img);
}

TEST_CASE("certain corruption replaces every channel with an impulse") {
  const Image out = corrupt_uncorrelated(gray(64, 64), 1.0, 9);
  for (const Rgb8& p : out.pixels()) {
    CHECK(impulse(p.r));
    CHECK(impulse(p.g));
    CHECK(impulse(p.b));
  }
}

TEST_CASE("uncorrelated statistics") {
  const Image out = corrupt_uncorrelated(gray(256, 256), 0.10, 1234);
  std::array<int, 3> hits{};
  int low = 0, total = 0;
  for (const Rgb8& p : out.pixels()) {
    for (int k = 0; k < 3; ++k) {
      const std::uint8_t v = k == 0 ? p.r : k == 1 ? p.g : p.b;
      if (v == 128) continue;
      CHECK(impulse(v));
      ++hits[static_cast<std::size_t>(k)];
      ++total;
      low += v <= 10;
    }
  }
  for (int h : hits) CHECK(std::abs(h / 65536.0 - 0.10) <= 0.01);
  CHECK(std::abs(double(low) / total - 0.5) <= 0.02);
}

TEST_CASE("correlated statistics") {
  NoiseConfig cfg;
  cfg.phi = 0.10;
  cfg.seed = 77;
  const Image out = corrupt_correlated(gray(256, 256), cfg);
  int corrupted = 0, all_three = 0;
  std::array<int, 3> single{};
  for (const Rgb8& p : out.pixels()) {
    const int n = (p.r != 128) + (p.g != 128) + (p.b != 128);
    if (n == 0) continue;
    CHECK((n == 1 || n == 3));
    ++corrupted;
    if (n == 3) ++all_three;
    if (n == 1) ++single[p.r != 128 ? 0 : p.g != 128 ? 1 : 2];
  }
  CHECK(std::abs(corrupted / 65536.0 - 0.10) <= 0.01);
  CHECK(std::abs(double(all_three) / corrupted - 0.25) <= 0.03);
  for (int s : single) CHECK(std::abs(double(s) / corrupted - 0.25) <= 0.03);
}

TEST_CASE("impulse values balance the two subranges") {
  int low = 0;
  std::array<int, 256> seen{};
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const std::uint8_t v = impulse_value(noise_hash(42, i, 0, 0, 1));
    CHECK(impulse(v));
    low += v <= 10;
    ++seen[v];
  }
  CHECK(std::abs(double(low) / draws - 0.5) <= 0.01);
  for (int v = 0; v <= 10; ++v) CHECK(seen[static_cast<std::size_t>(v)] > 0);
  for (int v = 245; v <= 255; ++v) CHECK(seen[static_cast<std::size_t>(v)] > 0);
}

TEST_CASE("determinism and locality") {
  std::mt19937_64 rng(102);
  const Image img = testing::random_image(rng, 40, 30);
  NoiseConfig cfg;
  cfg.phi = 0.3;
  cfg.seed = 5;
  CHECK(corrupt_correlated(img, cfg) == corrupt_correlated(img, cfg));
  CHECK(corrupt_uncorrelated(img, 0.3, 5) == corrupt_uncorrelated(img, 0.3, 5));
  cfg.seed = 6;
  CHECK_FALSE(corrupt_correlated(img, cfg) == corrupt(img, NoiseConfig{NoiseModel::correlated, 0.3, 0.25, 0.25, 0.25, 5}));
  // A pixel's fate depends only on its coordinates: a crop of the corrupted
  // image equals the corrupted crop.
  Image crop(20, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 20; ++x) crop.at(x, y) = img.at(x, y);
  const Image full = corrupt_uncorrelated(img, 0.3, 5);
  const Image part = corrupt_uncorrelated(crop, 0.3, 5);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 20; ++x) CHECK(part.at(x, y) == full.at(x, y));
}

TEST_CASE("untouched channels keep their source values") {
  std::mt19937_64 rng(103);
  const Image img = testing::random_image(rng, 64, 64);
  NoiseConfig cfg;
  cfg.phi = 0.5;
  const Image out = corrupt_correlated(img, cfg);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb8 a = img.pixels()[i], b = out.pixels()[i];
    if (a.r != b.r) CHECK(impulse(b.r));
    if (a.g != b.g) CHECK(impulse(b.g));
    if (a.b != b.b) CHECK(impulse(b.b));
  }
}

TEST_CASE("invalid probabilities") {
  CHECK_THROWS_AS(corrupt_uncorrelated(gray(2, 2), 1.5, 0), ContractViolation);
  NoiseConfig cfg;
  cfg.phi1 = 0.6;
  cfg.phi2 = 0.6;
  CHECK_THROWS_AS(corrupt_correlated(gray(2, 2), cfg), ContractViolation);
  cfg = {};
  cfg.phi = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ContractViolation);
}

TEST_CASE("unit conversion") {
  CHECK(to_unit(0) == 0.0);
  CHECK(to_unit(~0ULL) < 1.0);
}
