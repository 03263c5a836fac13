#pragma once

#include "vecfilt/filter.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

struct LabPixel {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct MetricReport {
  double mae = 0.0;
  double mse = 0.0;
  double ncd = 0.0;
};

/// Mean absolute per-channel difference. Throws ContractViolation on a size mismatch.
double mae(const Image& ref, const Image& test);

/// Mean squared per-channel difference.
double mse(const Image& ref, const Image& test);

/// sRGB (IEC 61966-2-1) to CIE 1976 L*a*b* under D65.
LabPixel srgb_to_lab(const Rgb8& p);

/// Sum of Lab errors over sum of reference Lab magnitudes. Two black images
/// give 0; a black reference with a differing test image is a ContractViolation.
double ncd(const Image& ref, const Image& test);

MetricReport evaluate(const Image& ref, const Image& test);

struct TimedResult {
  Image image;
  double time_ms = 0.0;
};

/// Single-threaded filtering pass with wall-clock time of the loop only.
TimedResult time_filter(const Image& img, const FilterSpec& spec, int side = 3);

}  // namespace vecfilt
