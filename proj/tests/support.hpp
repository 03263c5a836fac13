#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "vecfilt/color_math.hpp"
#include "vecfilt/image.hpp"

namespace testing {

using vecfilt::Vec3;
using vecfilt::Window;
using vecfilt::WindowBuffer;

inline Window make_window(const std::vector<Vec3>& pixels) {
  return Window(WindowBuffer<Vec3>(pixels.begin(), pixels.end()));
}

inline Window constant_window(Vec3 v, std::size_t n = 9) {
  return make_window(std::vector<Vec3>(n, v));
}

/// Eight (10,10,10) neighbors around a (250,250,250) impulse.
inline Window impulse_window() {
  std::vector<Vec3> px(9, Vec3{10, 10, 10});
  px[4] = {250, 250, 250};
  return make_window(px);
}

/// Integer-valued window; `spread` > 0 limits neighbors to a band around a
/// random base color, producing realistic near-flat windows with outliers.
inline Window random_window(std::mt19937_64& rng, int side = 3) {
  std::uniform_int_distribution<int> any(0, 255);
  std::uniform_int_distribution<int> style(0, 3);
  const int n = side * side;
  std::vector<Vec3> px(static_cast<std::size_t>(n));
  if (style(rng) == 0) {
    for (auto& p : px) p = {double(any(rng)), double(any(rng)), double(any(rng))};
  } else {
    const Vec3 base{double(any(rng)), double(any(rng)), double(any(rng))};
    std::uniform_int_distribution<int> jitter(-12, 12);
    std::uniform_int_distribution<int> coin(0, 5);
    for (auto& p : px) {
      if (coin(rng) == 0) {
        p = {double(any(rng)), double(any(rng)), double(any(rng))};
      } else {
        auto c = [&](double v) { return std::clamp(v + jitter(rng), 0.0, 255.0); };
        p = {c(base.r), c(base.g), c(base.b)};
      }
    }
  }
  return make_window(px);
}

inline vecfilt::Image random_image(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> any(0, 255);
  vecfilt::Image img(w, h);
  for (auto& p : img.pixels()) {
    p = {static_cast<std::uint8_t>(any(rng)), static_cast<std::uint8_t>(any(rng)),
         static_cast<std::uint8_t>(any(rng))};
  }
  return img;
}

inline bool same(const Vec3& a, const Vec3& b) { return a.r == b.r && a.g == b.g && a.b == b.b; }

inline bool near(const Vec3& a, const Vec3& b, double tol) {
  return std::abs(a.r - b.r) <= tol && std::abs(a.g - b.g) <= tol && std::abs(a.b - b.b) <= tol;
}

/// Oracles below recompute everything from scratch with the reference acos,
/// one pair at a time, in long double where cheap.
namespace oracle {

inline long double l2(const Vec3& a, const Vec3& b) {
  const long double dr = a.r - b.r, dg = a.g - b.g, db = a.b - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

inline long double angle(const Vec3& a, const Vec3& b) {
  const long double na = std::sqrt((long double)a.r * a.r + (long double)a.g * a.g + (long double)a.b * a.b);
  const long double nb = std::sqrt((long double)b.r * b.r + (long double)b.g * b.g + (long double)b.b * b.b);
  if (na == 0 || nb == 0) return 0;
  long double c = ((long double)a.r * b.r + (long double)a.g * b.g + (long double)a.b * b.b) / (na * nb);
  c = std::clamp(c, -1.0L, 1.0L);
  return std::acos(c);
}

template <class Score>
std::size_t argmin_index(const Window& w, Score&& score) {
  std::size_t best = 0;
  long double best_v = score(0);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const long double v = score(i);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

inline long double sum_l2(const Window& w, std::size_t i) {
  long double s = 0;
  for (std::size_t j = 0; j < w.size(); ++j) s += l2(w[i], w[j]);
  return s;
}

inline long double sum_angle(const Window& w, std::size_t i) {
  long double s = 0;
  for (std::size_t j = 0; j < w.size(); ++j) s += angle(w[i], w[j]);
  return s;
}

/// True when `out` is the pixel of minimal score. Scores within a relative
/// 1e-9 of the minimum form a tie set (distinct floating summation orders can
/// split a mathematical tie); any member of that set is accepted.
template <class Score>
bool selects_minimum(const Window& w, const Vec3& out, Score&& score) {
  std::vector<long double> s(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = score(i);
  const long double lo = *std::min_element(s.begin(), s.end());
  const long double tol = 1e-9L * std::max(1.0L, std::abs(lo));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (s[i] <= lo + tol && same(w[i], out)) return true;
  }
  return false;
}

}  // namespace oracle

}  // namespace testing
