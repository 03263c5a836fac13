#include "vecfilt/metrics.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

void check_sizes(const Image& ref, const Image& test) {
  if (ref.width() != test.width() || ref.height() != test.height()) {
    throw ContractViolation("image dimensions differ");
  }
  if (ref.empty()) throw ContractViolation("metrics need non-empty images");
}

// D65 reference white, Y normalized to 1 (CIE 1931 2-degree observer).
constexpr double kWhiteX = 0.9504559270516716;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.0890577507598784;

// Linear sRGB to XYZ, derived from the sRGB primaries and the white above.
constexpr double kM[3][3] = {
    {0.4123907992659594, 0.35758433938387796, 0.1804807884018343},
    {0.2126390058715103, 0.7151686787677559, 0.07219231536073371},
    {0.019330818715591825, 0.11919477979462596, 0.9505321522496607},
};

constexpr double kEpsilon = 216.0 / 24389.0;  // (6/29)^3
constexpr double kKappa = 24389.0 / 27.0;      // (29/3)^3

double decode(std::uint8_t v) {
  const double c = v / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

const std::array<double, 256>& decode_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[static_cast<std::size_t>(i)] = decode(static_cast<std::uint8_t>(i));
    return t;
  }();
  return table;
}

}  // namespace

double mae(const Image& ref, const Image& test) {
  check_sizes(ref, test);
  std::uint64_t total = 0;
  const auto& a = ref.pixels();
  const auto& b = test.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::uint64_t>(std::abs(a[i].r - b[i].r) + std::abs(a[i].g - b[i].g) +
                                        std::abs(a[i].b - b[i].b));
  }
  return static_cast<double>(total) / (3.0 * static_cast<double>(a.size()));
}

double mse(const Image& ref, const Image& test) {
  check_sizes(ref, test);
  std::uint64_t total = 0;
  const auto& a = ref.pixels();
  const auto& b = test.pixels();
  auto sq = [](int d) { return static_cast<std::uint64_t>(d * d); };
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += sq(a[i].r - b[i].r) + sq(a[i].g - b[i].g) + sq(a[i].b - b[i].b);
  }
  return static_cast<double>(total) / (3.0 * static_cast<double>(a.size()));
}

LabPixel srgb_to_lab(const Rgb8& p) {
  const auto& lin = decode_table();
  const double r = lin[p.r];
  const double g = lin[p.g];
  const double b = lin[p.b];
  const double x = kM[0][0] * r + kM[0][1] * g + kM[0][2] * b;
  const double y = kM[1][0] * r + kM[1][1] * g + kM[1][2] * b;
  const double z = kM[2][0] * r + kM[2][1] * g + kM[2][2] * b;
  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double ncd(const Image& ref, const Image& test) {
  check_sizes(ref, test);
  double num = 0.0;
  double den = 0.0;
  const auto& a = ref.pixels();
  const auto& b = test.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const LabPixel u = srgb_to_lab(a[i]);
    den += std::sqrt(u.L * u.L + u.a * u.a + u.b * u.b);
    if (a[i] == b[i]) continue;
    const LabPixel v = srgb_to_lab(b[i]);
    const double dl = u.L - v.L;
    const double da = u.a - v.a;
    const double db = u.b - v.b;
    num += std::sqrt(dl * dl + da * da + db * db);
  }
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw ContractViolation("ncd undefined: black reference against a differing image");
  }
  return num / den;
}

MetricReport evaluate(const Image& ref, const Image& test) {
  return {mae(ref, test), mse(ref, test), ncd(ref, test)};
}

TimedResult time_filter(const Image& img, const FilterSpec& spec, int side) {
  const auto filter = make_filter(spec);
  const auto start = std::chrono::steady_clock::now();
  Image out = apply_filter(img, *filter, side, 1);
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(out), std::chrono::duration<double, std::milli>(stop - start).count()};
}

}  // namespace vecfilt
