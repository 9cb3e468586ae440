// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/ops.hpp"

#include <algorithm>

#include <Eigen/Core>

#include "srab/error.hpp"

namespace srab {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

// Column matrix of shape (in*kh*kw, H*W): row (i,dy,dx) holds the input
// channel i shifted by (dy-kh/2, dx-kw/2) with zeros outside the image.
RowMatrix im2col(const ImageTensor &input, int kh, int kw) {
  const int h = input.height();
  const int w = input.width();
  const int ph = kh / 2;
  const int pw = kw / 2;
  RowMatrix cols = RowMatrix::Zero(
      static_cast<Eigen::Index>(input.channels()) * kh * kw,
      static_cast<Eigen::Index>(h) * w);
  Eigen::Index row = 0;
  for (int i = 0; i < input.channels(); ++i) {
    for (int dy = 0; dy < kh; ++dy) {
      for (int dx = 0; dx < kw; ++dx, ++row) {
        double *dst = cols.row(row).data();
        const int ox = dx - pw;
        const int x_begin = std::max(0, -ox);
        const int x_end = std::min(w, w - ox);
        for (int y = 0; y < h; ++y) {
          const int sy = y + dy - ph;
          if (sy < 0 || sy >= h || x_begin >= x_end)
            continue;
          const double *src = &input.at(i, sy, 0);
          std::copy(src + x_begin + ox, src + x_end + ox,
                    dst + static_cast<std::ptrdiff_t>(y) * w + x_begin);
        }
      }
    }
  }
  return cols;
}

// Adjoint of im2col: scatter-adds every column row back onto its source
// pixel.
ImageTensor col2im(const RowMatrix &cols, int channels, int h, int w, int kh,
                   int kw) {
  const int ph = kh / 2;
  const int pw = kw / 2;
  ImageTensor out(channels, h, w);
  Eigen::Index row = 0;
  for (int i = 0; i < channels; ++i) {
    for (int dy = 0; dy < kh; ++dy) {
      for (int dx = 0; dx < kw; ++dx, ++row) {
        const double *src = cols.row(row).data();
        const int ox = dx - pw;
        const int x_begin = std::max(0, -ox);
        const int x_end = std::min(w, w - ox);
        for (int y = 0; y < h; ++y) {
          const int sy = y + dy - ph;
          if (sy < 0 || sy >= h)
            continue;
          double *dst = &out.at(i, sy, 0);
          const double *s = src + static_cast<std::ptrdiff_t>(y) * w;
          for (int x = x_begin; x < x_end; ++x)
            dst[x + ox] += s[x];
        }
      }
    }
  }
  return out;
}

// Products run on owned, aligned copies. Eigen's vectorized kernels peel
// differently for unaligned maps, which would make results depend on where
// the allocator put a buffer.
RowMatrix as_matrix(const ImageTensor &t) {
  return ConstMatrixMap(t.data().data(), t.channels(),
                        static_cast<Eigen::Index>(t.plane_size()));
}

RowMatrix weight_matrix(const ConvKernel &k) {
  return ConstMatrixMap(k.weights.data(), k.out_channels, k.fan_in());
}

void store(const RowMatrix &m, std::span<double> out) {
  std::copy(m.data(), m.data() + m.size(), out.begin());
}

void accumulate(const RowMatrix &m, std::span<double> out) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    out[static_cast<std::size_t>(i)] += m.data()[i];
}

} // namespace

ConvKernel::ConvKernel(int out, int in, int kh, int kw)
    : out_channels(out), in_channels(in), kernel_height(kh), kernel_width(kw),
      weights(static_cast<std::size_t>(out) * in * kh * kw, 0.0),
      bias(static_cast<std::size_t>(out), 0.0) {
  validate();
}

void ConvKernel::validate() const {
  require(out_channels > 0 && in_channels > 0 && kernel_height > 0 &&
              kernel_width > 0,
          ErrorKind::Configuration, "kernel dimensions must be positive");
  require(kernel_height % 2 == 1 && kernel_width % 2 == 1,
          ErrorKind::Configuration, "kernel dimensions must be odd");
  require(weights.size() == static_cast<std::size_t>(out_channels) *
                                in_channels * kernel_height * kernel_width,
          ErrorKind::Configuration, "kernel weight count does not match shape");
  require(bias.size() == static_cast<std::size_t>(out_channels),
          ErrorKind::Configuration, "kernel bias count does not match shape");
}

ImageTensor conv2d_forward(const ImageTensor &input, const ConvKernel &kernel) {
  require(input.channels() == kernel.in_channels, ErrorKind::Configuration,
          "conv input has " + std::to_string(input.channels()) +
              " channels, kernel expects " +
              std::to_string(kernel.in_channels));
  ImageTensor out(kernel.out_channels, input.height(), input.width());
  RowMatrix result;
  if (kernel.kernel_height == 1 && kernel.kernel_width == 1)
    result.noalias() = weight_matrix(kernel) * as_matrix(input);
  else
    result.noalias() = weight_matrix(kernel) *
                       im2col(input, kernel.kernel_height, kernel.kernel_width);
  for (int o = 0; o < kernel.out_channels; ++o)
    result.row(o).array() += kernel.bias[o];
  store(result, out.data());
  return out;
}

ImageTensor conv2d_input_grad(const ImageTensor &upstream,
                              const ConvKernel &kernel) {
  require(upstream.channels() == kernel.out_channels, ErrorKind::Configuration,
          "conv upstream has " + std::to_string(upstream.channels()) +
              " channels, kernel produces " +
              std::to_string(kernel.out_channels));
  if (kernel.kernel_height == 1 && kernel.kernel_width == 1) {
    ImageTensor out(kernel.in_channels, upstream.height(), upstream.width());
    const RowMatrix result =
        weight_matrix(kernel).transpose() * as_matrix(upstream);
    store(result, out.data());
    return out;
  }
  const RowMatrix cols =
      weight_matrix(kernel).transpose() * as_matrix(upstream);
  return col2im(cols, kernel.in_channels, upstream.height(), upstream.width(),
                kernel.kernel_height, kernel.kernel_width);
}

void conv2d_weight_grad(const ImageTensor &input, const ImageTensor &upstream,
                        const ConvKernel &kernel, ConvKernelGrad &grad) {
  require(input.channels() == kernel.in_channels &&
              upstream.channels() == kernel.out_channels &&
              input.height() == upstream.height() &&
              input.width() == upstream.width(),
          ErrorKind::ShapeMismatch, "conv weight gradient operand shapes");
  if (grad.weights.size() != kernel.weights.size())
    grad.weights.assign(kernel.weights.size(), 0.0);
  if (grad.bias.size() != kernel.bias.size())
    grad.bias.assign(kernel.bias.size(), 0.0);
  const RowMatrix up = as_matrix(upstream);
  RowMatrix gw;
  if (kernel.kernel_height == 1 && kernel.kernel_width == 1)
    gw.noalias() = up * as_matrix(input).transpose();
  else
    gw.noalias() =
        up * im2col(input, kernel.kernel_height, kernel.kernel_width)
                 .transpose();
  accumulate(gw, grad.weights);
  for (int o = 0; o < kernel.out_channels; ++o)
    grad.bias[o] += up.row(o).sum();
}

ImageTensor relu_forward(const ImageTensor &input) {
  ImageTensor out = input;
  for (double &v : out.data())
    v = v > 0.0 ? v : 0.0;
  return out;
}

ImageTensor relu_input_grad(const ImageTensor &upstream,
                            const ImageTensor &saved_input) {
  require_same_shape(upstream, saved_input, "relu gradient");
  ImageTensor out = upstream;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!(saved_input[i] > 0.0))
      out[i] = 0.0;
  return out;
}

ImageTensor pixel_shuffle(const ImageTensor &input, int r) {
  require(r >= 1, ErrorKind::Configuration, "pixel shuffle factor must be >= 1");
  require(input.channels() % (r * r) == 0, ErrorKind::Configuration,
          "pixel shuffle needs channels divisible by r^2, got " +
              std::to_string(input.channels()));
  const int c_out = input.channels() / (r * r);
  ImageTensor out(c_out, input.height() * r, input.width() * r);
  for (int c = 0; c < c_out; ++c)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const int src_c = c * r * r + a * r + b;
        for (int y = 0; y < input.height(); ++y)
          for (int x = 0; x < input.width(); ++x)
            out.at(c, r * y + a, r * x + b) = input.at(src_c, y, x);
      }
  return out;
}

ImageTensor pixel_shuffle_grad(const ImageTensor &upstream, int r) {
  require(r >= 1, ErrorKind::Configuration, "pixel shuffle factor must be >= 1");
  require(upstream.height() % r == 0 && upstream.width() % r == 0,
          ErrorKind::Configuration,
          "pixel shuffle gradient needs spatial dims divisible by r");
  const int h = upstream.height() / r;
  const int w = upstream.width() / r;
  ImageTensor out(upstream.channels() * r * r, h, w);
  for (int c = 0; c < upstream.channels(); ++c)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const int dst_c = c * r * r + a * r + b;
        for (int y = 0; y < h; ++y)
          for (int x = 0; x < w; ++x)
            out.at(dst_c, y, x) = upstream.at(c, r * y + a, r * x + b);
      }
  return out;
}

} // namespace srab
