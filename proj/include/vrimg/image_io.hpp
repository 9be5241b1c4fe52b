#pragma once

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vrimg/image.hpp"

namespace vrimg {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is not square and cropping was not requested.
class NonSquareImageError : public ImageIoError {
 public:
  using ImageIoError::ImageIoError;
};

namespace detail {

inline Image square_or_crop(std::vector<std::uint8_t> px, int height, int width, int colors,
                            bool crop) {
  if (height == width) return Image(height, colors, std::move(px));
  if (!crop)
    throw NonSquareImageError("image is " + std::to_string(width) + "x" + std::to_string(height) +
                              "; pass the crop flag to center-crop it to a square");
  const int s = std::min(height, width);
  const int r0 = (height - s) / 2;
  const int c0 = (width - s) / 2;
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(s) * s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) out.push_back(px[static_cast<std::size_t>(r0 + r) * width + c0 + c]);
  return Image(s, colors, std::move(out));
}

class PgmReader {
 public:
  explicit PgmReader(std::string_view bytes) : b_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(b_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(static_cast<unsigned char>(b_[pos_])))
      throw ImageIoError("PGM: expected an unsigned integer at byte " + std::to_string(pos_));
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > 1'000'000'000) throw ImageIoError("PGM: integer overflow in header");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::string_view bytes() const { return b_; }

 private:
  std::string_view b_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Image decode_pgm(std::string_view bytes, bool crop = false) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw ImageIoError("PGM: missing P2/P5 magic");
  const bool binary = bytes[1] == '5';
  detail::PgmReader rd(bytes.substr(2));
  const long width = rd.read_uint();
  const long height = rd.read_uint();
  const long maxval = rd.read_uint();
  if (width < 1 || height < 1) throw ImageIoError("PGM: empty image");
  if (maxval < 1 || maxval > 255) throw ImageIoError("PGM: maxval must be in [1, 255]");
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> px(count);
  if (binary) {
    // exactly one whitespace byte separates the header from the raster
    if (rd.pos() >= rd.bytes().size() ||
        !std::isspace(static_cast<unsigned char>(rd.bytes()[rd.pos()])))
      throw ImageIoError("PGM: malformed header");
    rd.advance(1);
    if (rd.bytes().size() - rd.pos() < count) throw ImageIoError("PGM: truncated raster");
    for (std::size_t k = 0; k < count; ++k)
      px[k] = static_cast<std::uint8_t>(rd.bytes()[rd.pos() + k]);
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const long v = rd.read_uint();
      if (v > maxval) throw ImageIoError("PGM: sample exceeds maxval");
      px[k] = static_cast<std::uint8_t>(v);
    }
  }
  for (auto v : px)
    if (v > maxval) throw ImageIoError("PGM: sample exceeds maxval");
  return detail::square_or_crop(std::move(px), static_cast<int>(height), static_cast<int>(width),
                                static_cast<int>(maxval) + 1, crop);
}

// 8-bit luma, BT.601 weights.
inline std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = std::round(0.299 * r + 0.587 * g + 0.114 * b);
  return static_cast<std::uint8_t>(std::clamp(y, 0.0, 255.0));
}

inline Image decode_png(std::string_view bytes, bool crop = false) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size()))
    throw ImageIoError(std::string("PNG: ") + img.message);
  if (img.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&img);
    throw ImageIoError("PNG: 16-bit images are not supported");
  }
  // Read as RGBA so alpha can be dropped instead of composited.
  img.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, rgba.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw ImageIoError("PNG: " + msg);
  }
  const int width = static_cast<int>(img.width);
  const int height = static_cast<int>(img.height);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
  for (std::size_t k = 0; k < px.size(); ++k)
    px[k] = luma(rgba[4 * k], rgba[4 * k + 1], rgba[4 * k + 2]);
  return detail::square_or_crop(std::move(px), height, width, 256, crop);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ImageIoError("read failed: " + path.string());
  return std::move(ss).str();
}

// PGM (P2/P5) or PNG, detected from the file's magic bytes.
inline Image load_image(const std::filesystem::path& path, bool crop = false) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= 8 && png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0)
    return decode_png(bytes, crop);
  if (bytes.size() >= 2 && bytes[0] == 'P') return decode_pgm(bytes, crop);
  throw ImageIoError("unrecognized image format: " + path.string());
}

// ASCII P2 with maxval = colors - 1 (at least 1).
inline std::string encode_pgm(const Image& image) {
  std::string out = "P2\n" + std::to_string(image.side()) + " " + std::to_string(image.side()) +
                    "\n" + std::to_string(std::max(1, image.colors() - 1)) + "\n";
  for (int r = 0; r < image.side(); ++r) {
    for (int c = 0; c < image.side(); ++c) {
      if (c) out += ' ';
      out += std::to_string(image.at(r, c));
    }
    out += '\n';
  }
  return out;
}

// 8-bit grayscale PNG with pixel values written unscaled.
inline std::string encode_png(const Image& image) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.side());
  img.height = static_cast<png_uint_32>(image.side());
  img.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  const auto px = image.pixels();
  if (!png_image_write_get_memory_size(img, size, 0, px.data(), 0, nullptr))
    throw ImageIoError(std::string("PNG encode: ") + img.message);
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, px.data(), 0, nullptr))
    throw ImageIoError(std::string("PNG encode: ") + img.message);
  out.resize(size);
  return out;
}

// Write to a sibling temp file and rename over the target.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageIoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw ImageIoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ImageIoError("rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace vrimg
