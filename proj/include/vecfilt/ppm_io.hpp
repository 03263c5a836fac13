#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vecfilt/image.hpp"

namespace vecfilt {

/// Binary PPM (P6, maxval 255). Throws ParseError with the byte offset of the
/// first malformed element.
Image decode_ppm(std::string_view bytes);
std::string encode_ppm(const Image& img);

/// Throws IoError when the file cannot be opened or written.
Image read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Image& img);

}  // namespace vecfilt
