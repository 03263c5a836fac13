#include "vecfilt/ppm_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

#include "vecfilt/errors.hpp"

namespace vecfilt {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Whitespace and '#' comments between header tokens.
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  long number(const char* what) {
    skip_separators();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw ParseError(std::string("ppm ") + what + " is too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("ppm: expected ") + what, start);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image decode_ppm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw ParseError("ppm: missing P6 magic", 0);
  }
  HeaderReader in(bytes);
  in.advance(2);
  const std::size_t width_at = in.pos();
  const long width = in.number("width");
  const long height = in.number("height");
  if (width <= 0 || height <= 0) throw ParseError("ppm: dimensions must be positive", width_at);
  const std::size_t maxval_at = in.pos();
  const long maxval = in.number("maxval");
  if (maxval != 255) {
    throw ParseError("ppm: maxval " + std::to_string(maxval) + " unsupported (need 255)", maxval_at);
  }
  if (in.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[in.pos()]))) {
    throw ParseError("ppm: expected a single whitespace byte after maxval", in.pos());
  }
  in.advance(1);
  const std::size_t data = in.pos();
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - data < count * 3) {
    throw ParseError("ppm: truncated pixel data (" + std::to_string(bytes.size() - data) + " of " +
                         std::to_string(count * 3) + " bytes)",
                     bytes.size());
  }
  std::vector<Rgb8> pixels(count);
  for (std::size_t i = 0; i < count; ++i) {
    pixels[i] = {static_cast<std::uint8_t>(bytes[data + 3 * i]),
                 static_cast<std::uint8_t>(bytes[data + 3 * i + 1]),
                 static_cast<std::uint8_t>(bytes[data + 3 * i + 2])};
  }
  return Image(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                    "\n255\n";
  out.reserve(out.size() + img.size() * 3);
  for (const Rgb8& p : img.pixels()) {
    out.push_back(static_cast<char>(p.r));
    out.push_back(static_cast<char>(p.g));
    out.push_back(static_cast<char>(p.b));
  }
  return out;
}

Image read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

void write_ppm(const std::filesystem::path& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string bytes = encode_ppm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace vecfilt
