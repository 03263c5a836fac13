#include "vecfilt/image.hpp"

#include <algorithm>
#include <string>

#include "vecfilt/errors.hpp"

namespace vecfilt {

Image::Image(int width, int height, Rgb8 fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width > 0 ? width : 0) *
                  static_cast<std::size_t>(height > 0 ? height : 0),
              fill) {
  if (width <= 0 || height <= 0) {
    throw ContractViolation("image dimensions must be positive");
  }
}

Image::Image(int width, int height, std::vector<Rgb8> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw ContractViolation("image dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ContractViolation("pixel count does not match image dimensions");
  }
}

namespace {

bool valid_side(std::size_t n, int& side) {
  for (int s = 3; s <= kMaxWindowSide; s += 2) {
    if (static_cast<std::size_t>(s * s) == n) {
      side = s;
      return true;
    }
  }
  return false;
}

}  // namespace

Window::Window(WindowBuffer<Vec3> pixels) : pixels_(std::move(pixels)) {
  if (!valid_side(pixels_.size(), side_)) {
    throw ContractViolation("window size must be an odd perfect square in [9, " +
                            std::to_string(kMaxWindowPixels) + "], got " +
                            std::to_string(pixels_.size()));
  }
}

void extract_window_into(const Image& img, int x, int y, int side, Window& out) {
  if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) {
    throw ContractViolation("window origin (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside image");
  }
  if (side < 3 || side % 2 == 0 || side > kMaxWindowSide) {
    throw ContractViolation("window side must be odd in [3, " + std::to_string(kMaxWindowSide) +
                            "], got " + std::to_string(side));
  }
  const int r = side / 2;
  const int max_x = img.width() - 1;
  const int max_y = img.height() - 1;
  out.side_ = side;
  out.pixels_.clear();
  for (int dy = -r; dy <= r; ++dy) {
    const int yy = std::clamp(y + dy, 0, max_y);
    for (int dx = -r; dx <= r; ++dx) {
      const int xx = std::clamp(x + dx, 0, max_x);
      out.pixels_.push_back(to_vec(img.at(xx, yy)));
    }
  }
}

Window extract_window(const Image& img, int x, int y, int side) {
  Window w;
  extract_window_into(img, x, y, side, w);
  return w;
}

}  // namespace vecfilt
