#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vecfilt/filters_fuzzy.hpp"

using namespace vecfilt;
using testing::same;
namespace oracle = testing::oracle;

namespace {

using Kind = FuzzyWeightKind::Kind;

// Direct evaluation of the membership functions and the weighted average.
Vec3 fwaf_oracle(const Window& w, Kind kind) {
  std::vector<long double> d(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    switch (kind) {
      case Kind::exponential:
        d[i] = std::exp(-std::sqrt(oracle::sum_l2(w, i)) / 1.0L);
        break;
      case Kind::sigmoidal:
        d[i] = 2.0L / (1.0L + std::exp(oracle::sum_angle(w, i)));
        break;
      default:
        d[i] = oracle::sum_angle(w, i);
    }
  }
  if (kind == Kind::nearest_neighbor) {
    const long double hi = *std::max_element(d.begin(), d.end());
    const long double lo = *std::min_element(d.begin(), d.end());
    for (auto& v : d) v = hi > lo ? (hi - v) / (hi - lo) : 1.0L;
  }
  long double total = 0, r = 0, g = 0, b = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += d[i];
    r += d[i] * w[i].r;
    g += d[i] * w[i].g;
    b += d[i] * w[i].b;
  }
  return {double(r / total), double(g / total), double(b / total)};
}

bool in_hull(const Window& w, const Vec3& out) {
  for (int k = 0; k < 3; ++k) {
    double lo = 1e300, hi = -1e300;
    for (const Vec3& p : w) {
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    if (out[k] < lo - 1e-9 || out[k] > hi + 1e-9) return false;
  }
  return true;
}

const FuzzyWeightKind kAllKinds[] = {
    FuzzyWeightKind::exponential(), FuzzyWeightKind::sigmoidal(),
    FuzzyWeightKind::nearest_neighbor(DistanceKind::angular()), FuzzyWeightKind::composite_nn()};

}  // namespace

TEST_CASE("constant windows") {
  const Window w = testing::constant_window({12, 34, 56});
  const FuzzyWeights ex = fuzzy_weights(w, FuzzyWeightKind::exponential(), AcosMode::approximate);
  for (double v : ex.raw) CHECK(v == 1.0);
  const FuzzyWeights nn = fuzzy_weights(w, FuzzyWeightKind::nearest_neighbor(DistanceKind::minkowski()),
                                        AcosMode::approximate);
  for (double v : nn.normalized) CHECK(v == doctest::Approx(1.0 / 9));
  for (const auto& kind : kAllKinds) {
    CHECK(same(fwaf(w, kind, AcosMode::approximate), {12, 34, 56}));
  }
  CHECK(same(fovf(w, FuzzyWeightKind::exponential(), AcosMode::approximate), {12, 34, 56}));
  CHECK(same(fovf(w, FuzzyWeightKind::sigmoidal(), AcosMode::approximate), {12, 34, 56}));
}

TEST_CASE("impulse window") {
  const Window w = testing::impulse_window();
  const auto nn = FuzzyWeightKind::nearest_neighbor(DistanceKind::minkowski());
  const FuzzyWeights weights = fuzzy_weights(w, nn, AcosMode::reference);
  CHECK(weights.raw[4] == 0.0);
  for (std::size_t i = 0; i < 9; ++i) {
    if (i != 4) CHECK(weights.raw[i] == 1.0);
  }
  CHECK(same(fwaf(w, nn, AcosMode::reference), {10, 10, 10}));
  CHECK(same(fovf(w, FuzzyWeightKind::exponential(), AcosMode::reference), {10, 10, 10}));
}

TEST_CASE("weighted averages agree with direct evaluation") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    const Window w = testing::random_window(rng);
    // Angles of nearly parallel pairs carry ~1e-8 rad of acos rounding.
    CHECK(testing::near(fwaf(w, FuzzyWeightKind::sigmoidal(), AcosMode::reference),
                        fwaf_oracle(w, Kind::sigmoidal), 1e-6));
    CHECK(testing::near(fwaf(w, FuzzyWeightKind::nearest_neighbor(DistanceKind::angular()), AcosMode::reference),
                        fwaf_oracle(w, Kind::nearest_neighbor), 1e-6));
  }
}

TEST_CASE("stable exponential weights match naive evaluation where it is safe") {
  // Small spreads keep l(i) <= 50, where exp(-l^gamma) does not underflow.
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> base(20, 230), jitter(-3, 3);
  for (int t = 0; t < 300; ++t) {
    std::vector<Vec3> px(9);
    const Vec3 c{double(base(rng)), double(base(rng)), double(base(rng))};
    for (auto& p : px) p = {c.r + jitter(rng), c.g + jitter(rng), c.b + jitter(rng)};
    const Window w = testing::make_window(px);
    CHECK(testing::near(fwaf(w, FuzzyWeightKind::exponential(), AcosMode::reference),
                        fwaf_oracle(w, Kind::exponential), 1e-9));
  }
}

TEST_CASE("normalization and convexity") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const Window w = testing::random_window(rng);
    for (const auto& kind : kAllKinds) {
      const FuzzyWeights fw = fuzzy_weights(w, kind, AcosMode::approximate);
      double total = 0.0;
      for (double v : fw.normalized) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        total += v;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(in_hull(w, fwaf(w, kind, AcosMode::approximate)));
    }
    CHECK(in_hull(w, fovf(w, FuzzyWeightKind::exponential(), AcosMode::approximate)));
    CHECK(in_hull(w, fovf(w, FuzzyWeightKind::sigmoidal(), AcosMode::approximate)));
  }
}

TEST_CASE("ordered filter with k = n equals the weighted average") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 100; ++t) {
    const Window w = testing::random_window(rng);
    const FuzzyWeights fw = fuzzy_weights(w, FuzzyWeightKind::sigmoidal(), AcosMode::reference);
    CHECK(testing::near(fovf_top_k(w, fw, 9), fwaf(w, FuzzyWeightKind::sigmoidal(), AcosMode::reference), 1e-9));
  }
}

TEST_CASE("ordered filter with one dominant weight returns that pixel") {
  FuzzyWeights fw;
  fw.raw = Values(9, 0.01);
  fw.raw[6] = 5.0;
  fw.normalized = fw.raw;
  std::mt19937_64 rng(45);
  const Window w = testing::random_window(rng);
  CHECK(same(fovf_top_k(w, fw, 1), w[6]));
}
