#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/container/static_vector.hpp>

#include "vecfilt/color_math.hpp"

namespace vecfilt {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(const Rgb8&, const Rgb8&) = default;
};

constexpr Vec3 to_vec(const Rgb8& p) { return {double(p.r), double(p.g), double(p.b)}; }

/// 8-bit RGB image, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb8 fill = {});
  Image(int width, int height, std::vector<Rgb8> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  const Rgb8& at(int x, int y) const { return pixels_[index(x, y)]; }
  Rgb8& at(int x, int y) { return pixels_[index(x, y)]; }

  const std::vector<Rgb8>& pixels() const { return pixels_; }
  std::vector<Rgb8>& pixels() { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb8> pixels_;
};

inline constexpr int kMaxWindowSide = 9;
inline constexpr std::size_t kMaxWindowPixels = kMaxWindowSide * kMaxWindowSide;

/// Fixed-capacity buffer sized for the largest supported window; keeps the
/// per-pixel hot path free of heap traffic.
template <class T>
using WindowBuffer = boost::container::static_vector<T, kMaxWindowPixels>;

using Values = WindowBuffer<double>;
using Indices = WindowBuffer<std::size_t>;

/// A side x side neighborhood in row-major order. The element at
/// center_index() is the pixel being filtered.
class Window {
 public:
  Window() = default;
  /// Throws ContractViolation unless pixels.size() is an odd perfect square >= 9
  /// with side <= kMaxWindowSide.
  explicit Window(WindowBuffer<Vec3> pixels);

  int side() const { return side_; }
  std::size_t size() const { return pixels_.size(); }
  std::size_t center_index() const { return pixels_.size() / 2; }
  const Vec3& center() const { return pixels_[center_index()]; }

  const Vec3& operator[](std::size_t i) const { return pixels_[i]; }
  auto begin() const { return pixels_.begin(); }
  auto end() const { return pixels_.end(); }
  const WindowBuffer<Vec3>& pixels() const { return pixels_; }

 private:
  friend void extract_window_into(const Image&, int, int, int, Window&);

  int side_ = 0;
  WindowBuffer<Vec3> pixels_;
};

/// Replicate-padded side x side neighborhood of (x, y).
Window extract_window(const Image& img, int x, int y, int side);

/// Same as extract_window but reuses `out`'s storage.
void extract_window_into(const Image& img, int x, int y, int side, Window& out);

}  // namespace vecfilt
