#include "sigverify/image_io.hpp"

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "sigverify/error.hpp"

namespace sigverify {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

[[noreturn]] void decode_failure(const fs::path& path, const std::string& why) {
  throw Error(ErrorCode::decode, "cannot decode " + path.string() + ": " + why);
}

struct PngReadState {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t length) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (st->offset + length > st->data.size()) png_error(png, "truncated PNG stream");
  std::memcpy(out, st->data.data() + st->offset, length);
  st->offset += length;
}

void png_error_to_exception(png_structp, png_const_charp msg) { throw std::runtime_error(msg); }
void png_warning_ignored(png_structp, png_const_charp) {}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_to_exception, png_warning_ignored);
  if (!png) throw std::runtime_error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_read_struct(p, i, nullptr); }
  } guard{&png, &info};

  PngReadState st{bytes, 0};
  png_set_read_fn(png, &st, png_read_from_memory);
  png_read_info(png, info);

  // Normalize everything to 8-bit RGB(A) or gray(A).
  png_set_strip_16(png);
  png_set_packing(png);
  png_set_palette_to_rgb(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  png_read_update_info(png, info);

  const std::size_t w = png_get_image_width(png, info);
  const std::size_t h = png_get_image_height(png, info);
  const std::size_t channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  std::vector<std::uint8_t> raw(stride * h);
  std::vector<png_bytep> rows(h);
  for (std::size_t r = 0; r < h; ++r) rows[r] = raw.data() + r * stride;
  png_read_image(png, rows.data());

  std::vector<double> px(w * h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const std::uint8_t* p = rows[r] + c * channels;
      px[r * w + c] = channels >= 3 ? luminance(p[0], p[1], p[2]) : p[0];
    }
  }
  return GrayImage(w, h, std::move(px));
}

GrayImage decode_tiff(const fs::path& path) {
  TIFFSetWarningHandler(nullptr);
  TIFFSetErrorHandler(nullptr);
  std::unique_ptr<TIFF, void (*)(TIFF*)> tif(TIFFOpen(path.c_str(), "r"), TIFFClose);
  if (!tif) throw std::runtime_error("not a readable TIFF");
  std::uint32_t w = 0;
  std::uint32_t h = 0;
  TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &w);
  TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &h);
  if (w == 0 || h == 0) throw std::runtime_error("TIFF has zero size");
  std::vector<std::uint32_t> rgba(static_cast<std::size_t>(w) * h);
  if (!TIFFReadRGBAImageOriented(tif.get(), w, h, rgba.data(), ORIENTATION_TOPLEFT, 0)) {
    throw std::runtime_error("unsupported TIFF layout");
  }
  std::vector<double> px(rgba.size());
  for (std::size_t i = 0; i < rgba.size(); ++i) {
    const std::uint32_t v = rgba[i];
    px[i] = luminance(TIFFGetR(v), TIFFGetG(v), TIFFGetB(v));
  }
  return GrayImage(w, h, std::move(px));
}

bool has_prefix(std::span<const std::uint8_t> bytes, std::initializer_list<std::uint8_t> sig) {
  return bytes.size() >= sig.size() && std::equal(sig.begin(), sig.end(), bytes.begin());
}

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_uint = [&]() -> std::size_t {
    skip_space();
    std::size_t v = 0;
    std::size_t digits = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + static_cast<std::size_t>(bytes[pos++] - '0');
      if (++digits > 9) throw std::runtime_error("PGM header value too large");
    }
    if (digits == 0) throw std::runtime_error("malformed PGM header");
    return v;
  };

  if (!has_prefix(bytes, {'P', '5'})) throw std::runtime_error("not a binary PGM (P5)");
  pos = 2;
  const std::size_t w = read_uint();
  const std::size_t h = read_uint();
  const std::size_t maxval = read_uint();
  if (w == 0 || h == 0) throw std::runtime_error("PGM has zero size");
  if (maxval == 0 || maxval > 65535) throw std::runtime_error("PGM maxval out of range");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw std::runtime_error("malformed PGM header");
  ++pos;

  const std::size_t bps = maxval > 255 ? 2 : 1;
  if (bytes.size() - pos < w * h * bps) throw std::runtime_error("truncated PGM raster");
  std::vector<double> px(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    const std::size_t v = bps == 1 ? bytes[pos + i] : (std::size_t{bytes[pos + 2 * i]} << 8) | bytes[pos + 2 * i + 1];
    if (v > maxval) throw std::runtime_error("PGM sample exceeds maxval");
    px[i] = maxval == 255 ? static_cast<double>(v) : 255.0 * static_cast<double>(v) / static_cast<double>(maxval);
  }
  return GrayImage(w, h, std::move(px));
}

GrayImage read_image(const fs::path& path) {
  const auto bytes = read_bytes(path);
  try {
    if (has_prefix(bytes, {0x89, 'P', 'N', 'G'})) return decode_png(bytes);
    if (has_prefix(bytes, {'P', '5'})) return decode_pgm(bytes);
    if (has_prefix(bytes, {'I', 'I', 42, 0}) || has_prefix(bytes, {'M', 'M', 0, 42})) return decode_tiff(path);
  } catch (const Error& e) {
    decode_failure(path, e.what());
  } catch (const std::exception& e) {
    decode_failure(path, e.what());
  }
  decode_failure(path, "unrecognised image format");
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + img.size());
  for (double v : img.pixels()) out.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))));
  return out;
}

void write_pgm(const fs::path& path, const GrayImage& img) {
  const auto bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

void write_png(const fs::path& path, const GrayImage& img) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "wb"), std::fclose);
  if (!fp) throw Error(ErrorCode::io, "cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_to_exception, png_warning_ignored);
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_write_struct(p, i); }
  } guard{&png, &info};

  std::vector<std::uint8_t> row(img.width());
  try {
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::size_t r = 0; r < img.height(); ++r) {
      for (std::size_t c = 0; c < img.width(); ++c) {
        row[c] = static_cast<std::uint8_t>(std::lround(std::clamp(img.at(r, c), 0.0, 255.0)));
      }
      png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::io, "cannot write " + path.string() + ": " + e.what());
  }
}

bool is_supported_image_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm" || ext == ".tif" || ext == ".tiff";
}

}  // namespace sigverify
