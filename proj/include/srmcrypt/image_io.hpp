#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srmcrypt/common.hpp"

namespace srmcrypt {

// Binary PGM (P5) with maxval <= 255. Throws FormatError.
Image read_pgm(const std::filesystem::path& path);
Image parse_pgm(const std::string& bytes);

// Rounds to nearest and clamps to [0,255].
std::string encode_pgm(const Image& image);
void write_pgm(const std::filesystem::path& path, const Image& image);

std::uint8_t quantize_pixel(double v);
Image quantize(const Image& image);

// Writes through a temporary file in the same directory, then renames, so
// a failed write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

} // namespace srmcrypt
