#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace vecfilt {

using ParamMap = std::map<std::string, double>;

/// A registered filter name plus its parameter overrides. Parameters not
/// listed take their published defaults.
struct FilterSpec {
  std::string name;
  ParamMap params;
  /// Minkowski order used wherever a magnitude distance is involved.
  double p = 2.0;
  AcosMode acos = AcosMode::approximate;
};

/// A filter evaluated independently on every window.
class WindowFilter {
 public:
  virtual ~WindowFilter() = default;

  virtual Vec3 operator()(const Window& win) const = 0;

  /// Filters with image-level state (KVMF's kernel width) return a copy bound
  /// to `img`; others return nullptr and are used as is.
  virtual std::unique_ptr<WindowFilter> bind(const Image& img) const;
};

enum class FilterFamily {
  basic,
  fuzzy,
  hybrid,
  center_weighted,
  entropy,
  peer_group,
  sigma,
  misc,
};

std::string_view family_name(FilterFamily family);

struct FilterInfo {
  std::string name;
  FilterFamily family;
  /// Output is always either the center pixel or one alternative vector.
  bool switching;
};

/// The 48 benchmark filters in a stable order.
const std::vector<FilterInfo>& filter_catalog();

/// Parameter keys accepted by `name` (excluding the shared p and acos).
std::vector<std::string> filter_parameters(const std::string& name);

/// Builds a filter. Besides the catalog names, "cwvmf:K", "cwvdf:K" and
/// "cwddf:K" select a center-weighted filter with smoothing parameter K.
/// Throws RegistryError on unknown names or parameters.
std::unique_ptr<WindowFilter> make_filter(const FilterSpec& spec);

/// Quantizes a real filter output: round half away from zero, clamp to [0, 255].
/// Throws ContractViolation on non-finite components.
Rgb8 quantize(const Vec3& v);

/// Non-recursive sliding-window filtering: every output pixel is computed from
/// the window of the input image. `threads` > 1 splits rows across workers and
/// gives bit-identical results.
Image apply_filter(const Image& img, const WindowFilter& filter, int side = 3, int threads = 1);
Image apply_filter(const Image& img, const FilterSpec& spec, int side = 3, int threads = 1);

}  // namespace vecfilt
