// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "srab/error.hpp"

namespace srab {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Configuration:
    return "configuration error";
  case ErrorKind::ShapeMismatch:
    return "shape mismatch";
  case ErrorKind::BadMagic:
    return "bad magic";
  case ErrorKind::VersionMismatch:
    return "version mismatch";
  case ErrorKind::FileShapeMismatch:
    return "shape mismatch in file";
  case ErrorKind::TruncatedFile:
    return "truncated file";
  case ErrorKind::Io:
    return "i/o error";
  case ErrorKind::UnsupportedBitDepth:
    return "unsupported bit depth";
  case ErrorKind::UnsupportedFormat:
    return "unsupported format";
  case ErrorKind::EmptyRegion:
    return "empty region";
  case ErrorKind::Data:
    return "data error";
  }
  return "unknown error";
}

void raise(ErrorKind kind, const std::string &what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

ImageTensor::ImageTensor(int channels, int height, int width, double fill)
    : channels_(channels), height_(height), width_(width) {
  require(channels >= 0 && height >= 0 && width >= 0, ErrorKind::Configuration,
          "negative tensor dimension");
  data_.assign(static_cast<std::size_t>(channels) * height * width, fill);
}

ImageTensor::ImageTensor(int channels, int height, int width,
                         std::vector<double> data)
    : channels_(channels), height_(height), width_(width),
      data_(std::move(data)) {
  require(channels >= 0 && height >= 0 && width >= 0, ErrorKind::Configuration,
          "negative tensor dimension");
  require(data_.size() == static_cast<std::size_t>(channels) * height * width,
          ErrorKind::ShapeMismatch,
          "data length does not equal channels*height*width");
}

std::span<double> ImageTensor::plane(int c) {
  return std::span<double>(data_).subspan(c * plane_size(), plane_size());
}

std::span<const double> ImageTensor::plane(int c) const {
  return std::span<const double>(data_).subspan(c * plane_size(), plane_size());
}

std::string ImageTensor::shape_string() const {
  return "(" + std::to_string(channels_) + "," + std::to_string(height_) + "," +
         std::to_string(width_) + ")";
}

void require_same_shape(const ImageTensor &a, const ImageTensor &b,
                        const char *what) {
  if (!a.same_shape(b))
    raise(ErrorKind::ShapeMismatch, std::string(what) + ": " +
                                        a.shape_string() + " vs " +
                                        b.shape_string());
}

ImageTensor operator+(const ImageTensor &a, const ImageTensor &b) {
  ImageTensor out = a;
  out += b;
  return out;
}

ImageTensor &operator+=(ImageTensor &a, const ImageTensor &b) {
  require_same_shape(a, b, "add");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}

ImageTensor operator-(const ImageTensor &a, const ImageTensor &b) {
  require_same_shape(a, b, "subtract");
  ImageTensor out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] -= b[i];
  return out;
}

ImageTensor operator*(double s, const ImageTensor &a) {
  ImageTensor out = a;
  for (double &v : out.data())
    v *= s;
  return out;
}

ImageTensor clip(const ImageTensor &t, double lo, double hi) {
  ImageTensor out = t;
  for (double &v : out.data())
    v = std::min(std::max(v, lo), hi);
  return out;
}

ImageTensor sign(const ImageTensor &t) {
  ImageTensor out = t;
  for (double &v : out.data())
    v = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  return out;
}

ImageTensor apply_mask(const ImageTensor &t, const ImageTensor &mask) {
  require(mask.channels() == 1 && mask.height() == t.height() &&
              mask.width() == t.width(),
          ErrorKind::ShapeMismatch,
          "mask " + mask.shape_string() + " does not cover " +
              t.shape_string());
  ImageTensor out = t;
  const auto m = mask.data();
  for (int c = 0; c < t.channels(); ++c) {
    auto p = out.plane(c);
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] *= m[i];
  }
  return out;
}

double l1_norm(const ImageTensor &t) {
  double s = 0.0;
  for (double v : t.data())
    s += std::abs(v);
  return s;
}

double l2_norm(const ImageTensor &t) { return std::sqrt(dot(t, t)); }

double linf_norm(const ImageTensor &t) {
  double m = 0.0;
  for (double v : t.data())
    m = std::max(m, std::abs(v));
  return m;
}

double dot(const ImageTensor &a, const ImageTensor &b) {
  require_same_shape(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

double max_abs_diff(const ImageTensor &a, const ImageTensor &b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ImageTensor crop(const ImageTensor &t, int y0, int x0, int h, int w) {
  require(y0 >= 0 && x0 >= 0 && h >= 0 && w >= 0 && y0 + h <= t.height() &&
              x0 + w <= t.width(),
          ErrorKind::ShapeMismatch, "crop window outside " + t.shape_string());
  ImageTensor out(t.channels(), h, w);
  for (int c = 0; c < t.channels(); ++c)
    for (int y = 0; y < h; ++y)
      std::copy_n(&t.data()[(static_cast<std::size_t>(c) * t.height() + y0 + y) *
                                t.width() +
                            x0],
                  w, &out.at(c, y, 0));
  return out;
}

void paste(ImageTensor &t, const ImageTensor &patch, int y0, int x0) {
  require(patch.channels() == t.channels() && y0 >= 0 && x0 >= 0 &&
              y0 + patch.height() <= t.height() &&
              x0 + patch.width() <= t.width(),
          ErrorKind::ShapeMismatch,
          "patch " + patch.shape_string() + " does not fit " +
              t.shape_string());
  for (int c = 0; c < t.channels(); ++c)
    for (int y = 0; y < patch.height(); ++y)
      std::copy_n(&patch.at(c, y, 0), patch.width(), &t.at(c, y0 + y, x0));
}

} // namespace srab
