#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sigverify/image.hpp"

namespace sigverify {

/// ITU-R BT.601 luma, the conversion applied to every colour input.
inline double luminance(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

/// Decodes PNG, binary PGM (P5) or TIFF, picked by file signature. Colour is
/// reduced to luminance; 16-bit samples are scaled to 8 bits. Throws
/// ErrorCode::io when the file cannot be read and ErrorCode::decode when its
/// content is not a supported image; both messages name the path.
GrayImage read_image(const std::filesystem::path& path);

GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

/// 8-bit binary PGM with intensities rounded to the nearest integer.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
void write_png(const std::filesystem::path& path, const GrayImage& img);

/// File extensions the corpus loader picks up (lower case, with dot).
bool is_supported_image_extension(const std::filesystem::path& path);

}  // namespace sigverify
