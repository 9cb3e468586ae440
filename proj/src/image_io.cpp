// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include <png.h>

#include "srab/error.hpp"

namespace srab {

namespace {

struct PngMessage {
  char text[256] = {0};
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto *m = static_cast<PngMessage *>(png_get_error_ptr(png));
  if (m)
    std::snprintf(m->text, sizeof m->text, "%s", msg);
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct File {
  std::FILE *f = nullptr;
  ~File() {
    if (f)
      std::fclose(f);
  }
};

struct ReadHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~ReadHandles() {
    if (png)
      png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct WriteHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~WriteHandles() {
    if (png)
      png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

} // namespace

double quantize_8bit(double x) {
  return std::round(std::clamp(x, 0.0, 1.0) * 255.0) / 255.0;
}

ImageTensor quantize_8bit(const ImageTensor &image) {
  ImageTensor out = image;
  for (double &v : out.data())
    v = quantize_8bit(v);
  return out;
}

ImageTensor load_png(const std::filesystem::path &path) {
  File file;
  file.f = std::fopen(path.c_str(), "rb");
  if (!file.f)
    raise(ErrorKind::Io, "cannot open " + path.string());
  png_byte signature[8];
  if (std::fread(signature, 1, 8, file.f) != 8 ||
      png_sig_cmp(signature, 0, 8) != 0)
    raise(ErrorKind::UnsupportedFormat, path.string() + " is not a PNG file");

  PngMessage message;
  ReadHandles h;
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message,
                                 on_png_error, on_png_warning);
  if (!h.png)
    raise(ErrorKind::Io, "libpng initialization failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info)
    raise(ErrorKind::Io, "libpng initialization failed");

  std::vector<png_byte> pixels;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  if (setjmp(png_jmpbuf(h.png)))
    raise(ErrorKind::UnsupportedFormat,
          path.string() + ": " + std::string(message.text));

  png_init_io(h.png, file.f);
  png_set_sig_bytes(h.png, 8);
  png_read_info(h.png, h.info);
  png_get_IHDR(h.png, h.info, &width, &height, &bit_depth, &color_type,
               nullptr, nullptr, nullptr);
  if (bit_depth > 8)
    raise(ErrorKind::UnsupportedBitDepth,
          path.string() + " has " + std::to_string(bit_depth) +
              "-bit samples; only 8-bit images are supported");
  if (color_type == PNG_COLOR_TYPE_PALETTE)
    png_set_palette_to_rgb(h.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(h.png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(h.png);
  if (color_type & PNG_COLOR_MASK_ALPHA)
    png_set_strip_alpha(h.png);
  if (png_get_valid(h.png, h.info, PNG_INFO_tRNS))
    png_set_strip_alpha(h.png);
  png_read_update_info(h.png, h.info);
  if (png_get_channels(h.png, h.info) != 3)
    raise(ErrorKind::UnsupportedFormat,
          path.string() + ": unexpected channel layout");

  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  pixels.resize(stride * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y)
    rows[y] = pixels.data() + y * stride;
  png_read_image(h.png, rows.data());
  png_read_end(h.png, nullptr);

  ImageTensor image(3, static_cast<int>(height), static_cast<int>(width));
  for (int c = 0; c < 3; ++c)
    for (png_uint_32 y = 0; y < height; ++y)
      for (png_uint_32 x = 0; x < width; ++x)
        image.at(c, static_cast<int>(y), static_cast<int>(x)) =
            pixels[y * stride + x * 3 + c] / 255.0;
  return image;
}

void save_png(const ImageTensor &image, const std::filesystem::path &path) {
  require(image.channels() == 3 || image.channels() == 1,
          ErrorKind::Configuration, "PNG output needs 1 or 3 channels");
  require(image.height() >= 1 && image.width() >= 1, ErrorKind::Configuration,
          "cannot write an empty image");
  const int channels = image.channels();
  const std::size_t stride = static_cast<std::size_t>(image.width()) * channels;
  std::vector<png_byte> pixels(stride * image.height());
  for (int c = 0; c < channels; ++c)
    for (int y = 0; y < image.height(); ++y)
      for (int x = 0; x < image.width(); ++x)
        pixels[y * stride + x * channels + c] = static_cast<png_byte>(
            std::lround(quantize_8bit(image.at(c, y, x)) * 255.0));
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y)
    rows[y] = pixels.data() + y * stride;

  File file;
  file.f = std::fopen(path.c_str(), "wb");
  if (!file.f)
    raise(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  PngMessage message;
  WriteHandles h;
  h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                  on_png_error, on_png_warning);
  if (!h.png)
    raise(ErrorKind::Io, "libpng initialization failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info)
    raise(ErrorKind::Io, "libpng initialization failed");
  if (setjmp(png_jmpbuf(h.png)))
    raise(ErrorKind::Io, path.string() + ": " + std::string(message.text));
  png_init_io(h.png, file.f);
  png_set_compression_level(h.png, 6);
  png_set_IHDR(h.png, h.info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(h.png, h.info);
  png_write_image(h.png, rows.data());
  png_write_end(h.png, nullptr);
  if (std::fflush(file.f) != 0)
    raise(ErrorKind::Io, "failed writing " + path.string());
}

} // namespace srab
