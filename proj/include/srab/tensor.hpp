// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace srab {

/// Planar (channels, height, width) tensor of doubles. Used for images,
/// perturbations and gradients alike; only images are expected to stay in
/// [0, 1].
class ImageTensor {
public:
  ImageTensor() = default;
  ImageTensor(int channels, int height, int width, double fill = 0.0);
  ImageTensor(int channels, int height, int width, std::vector<double> data);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(height_) * width_;
  }
  bool empty() const noexcept { return data_.empty(); }

  double &at(int c, int y, int x) {
    return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x];
  }
  const double &at(int c, int y, int x) const {
    return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x];
  }
  double &operator[](std::size_t i) { return data_[i]; }
  const double &operator[](std::size_t i) const { return data_[i]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> plane(int c);
  std::span<const double> plane(int c) const;

  bool same_shape(const ImageTensor &other) const noexcept {
    return channels_ == other.channels_ && height_ == other.height_ &&
           width_ == other.width_;
  }
  std::string shape_string() const;

  static ImageTensor zeros_like(const ImageTensor &t) {
    return ImageTensor(t.channels_, t.height_, t.width_);
  }

  friend bool operator==(const ImageTensor &, const ImageTensor &) = default;

private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Elementwise helpers. Binary helpers throw ShapeMismatch on differing shapes.
ImageTensor operator+(const ImageTensor &a, const ImageTensor &b);
ImageTensor operator-(const ImageTensor &a, const ImageTensor &b);
ImageTensor operator*(double s, const ImageTensor &a);
ImageTensor &operator+=(ImageTensor &a, const ImageTensor &b);

ImageTensor clip(const ImageTensor &t, double lo, double hi);
ImageTensor sign(const ImageTensor &t);

/// Multiplies every channel of `t` by the single-channel `mask` of equal
/// spatial size.
ImageTensor apply_mask(const ImageTensor &t, const ImageTensor &mask);

double l1_norm(const ImageTensor &t);
double l2_norm(const ImageTensor &t);
double linf_norm(const ImageTensor &t);
double dot(const ImageTensor &a, const ImageTensor &b);
double max_abs_diff(const ImageTensor &a, const ImageTensor &b);

/// Copies the window [y0, y0+h) x [x0, x0+w) of every channel.
ImageTensor crop(const ImageTensor &t, int y0, int x0, int h, int w);
/// Writes `patch` into `t` with its top-left corner at (y0, x0).
void paste(ImageTensor &t, const ImageTensor &patch, int y0, int x0);

void require_same_shape(const ImageTensor &a, const ImageTensor &b,
                        const char *what);

} // namespace srab
