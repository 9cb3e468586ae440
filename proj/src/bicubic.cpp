// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/bicubic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "srab/error.hpp"

namespace srab {

namespace {

struct Tap {
  int index;
  double weight;
};

// Per-axis sampling table: output i reads taps[begin[i] .. begin[i+1]).
struct AxisTable {
  std::vector<std::size_t> begin;
  std::vector<Tap> taps;
};

AxisTable make_axis(int in_size, int out_size, bool antialias) {
  const double ratio = static_cast<double>(in_size) / out_size;
  const double stretch = antialias ? std::max(1.0, ratio) : 1.0;
  const double support = 2.0 * stretch;
  AxisTable table;
  table.begin.reserve(out_size + 1);
  for (int i = 0; i < out_size; ++i) {
    table.begin.push_back(table.taps.size());
    const double center = (i + 0.5) * ratio - 0.5;
    const int first = static_cast<int>(std::floor(center - support)) + 1;
    const int last = static_cast<int>(std::ceil(center + support)) - 1;
    const std::size_t start = table.taps.size();
    double sum = 0.0;
    for (int s = first; s <= last; ++s) {
      const double w = keys_cubic((s - center) / stretch) / stretch;
      if (w == 0.0)
        continue;
      table.taps.push_back({std::clamp(s, 0, in_size - 1), w});
      sum += w;
    }
    if (antialias && sum != 0.0)
      for (std::size_t t = start; t < table.taps.size(); ++t)
        table.taps[t].weight /= sum;
  }
  table.begin.push_back(table.taps.size());
  return table;
}

// out[c, y, x'] = sum_t w_t in[c, y, idx_t]
ImageTensor apply_horizontal(const ImageTensor &in, const AxisTable &t,
                             int out_w) {
  ImageTensor out(in.channels(), in.height(), out_w);
  for (int c = 0; c < in.channels(); ++c)
    for (int y = 0; y < in.height(); ++y) {
      const double *src = &in.at(c, y, 0);
      double *dst = &out.at(c, y, 0);
      for (int x = 0; x < out_w; ++x) {
        double acc = 0.0;
        for (std::size_t k = t.begin[x]; k < t.begin[x + 1]; ++k)
          acc += t.taps[k].weight * src[t.taps[k].index];
        dst[x] = acc;
      }
    }
  return out;
}

ImageTensor apply_vertical(const ImageTensor &in, const AxisTable &t,
                           int out_h) {
  ImageTensor out(in.channels(), out_h, in.width());
  const int w = in.width();
  for (int c = 0; c < in.channels(); ++c)
    for (int y = 0; y < out_h; ++y) {
      double *dst = &out.at(c, y, 0);
      for (std::size_t k = t.begin[y]; k < t.begin[y + 1]; ++k) {
        const double *src = &in.at(c, t.taps[k].index, 0);
        const double wt = t.taps[k].weight;
        for (int x = 0; x < w; ++x)
          dst[x] += wt * src[x];
      }
    }
  return out;
}

ImageTensor transpose_horizontal(const ImageTensor &up, const AxisTable &t,
                                 int in_w) {
  ImageTensor out(up.channels(), up.height(), in_w);
  for (int c = 0; c < up.channels(); ++c)
    for (int y = 0; y < up.height(); ++y) {
      const double *src = &up.at(c, y, 0);
      double *dst = &out.at(c, y, 0);
      for (int x = 0; x < up.width(); ++x)
        for (std::size_t k = t.begin[x]; k < t.begin[x + 1]; ++k)
          dst[t.taps[k].index] += t.taps[k].weight * src[x];
    }
  return out;
}

ImageTensor transpose_vertical(const ImageTensor &up, const AxisTable &t,
                               int in_h) {
  ImageTensor out(up.channels(), in_h, up.width());
  const int w = up.width();
  for (int c = 0; c < up.channels(); ++c)
    for (int y = 0; y < up.height(); ++y) {
      const double *src = &up.at(c, y, 0);
      for (std::size_t k = t.begin[y]; k < t.begin[y + 1]; ++k) {
        double *dst = &out.at(c, t.taps[k].index, 0);
        const double wt = t.taps[k].weight;
        for (int x = 0; x < w; ++x)
          dst[x] += wt * src[x];
      }
    }
  return out;
}

ImageTensor resample(const ImageTensor &input, int out_h, int out_w,
                     bool antialias) {
  require(out_h >= 1 && out_w >= 1, ErrorKind::Configuration,
          "resize target dimensions must be >= 1");
  require(input.height() >= 1 && input.width() >= 1, ErrorKind::Configuration,
          "cannot resize an empty image");
  const AxisTable cols = make_axis(input.width(), out_w, antialias);
  const AxisTable rows = make_axis(input.height(), out_h, antialias);
  return apply_vertical(apply_horizontal(input, cols, out_w), rows, out_h);
}

} // namespace

double keys_cubic(double t, double a) {
  const double x = std::abs(t);
  if (x <= 1.0)
    return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0)
    return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

ImageTensor bicubic_resize(const ImageTensor &input, int out_height,
                           int out_width) {
  return resample(input, out_height, out_width, false);
}

ImageTensor bicubic_resize_grad(const ImageTensor &upstream, int in_height,
                                int in_width) {
  require(in_height >= 1 && in_width >= 1, ErrorKind::Configuration,
          "resize source dimensions must be >= 1");
  const AxisTable cols = make_axis(in_width, upstream.width(), false);
  const AxisTable rows = make_axis(in_height, upstream.height(), false);
  return transpose_horizontal(transpose_vertical(upstream, rows, in_height),
                              cols, in_width);
}

ImageTensor bicubic_downscale(const ImageTensor &input, int factor) {
  require(factor >= 1, ErrorKind::Configuration,
          "downscale factor must be >= 1");
  require(input.height() >= factor && input.width() >= factor,
          ErrorKind::Configuration, "image smaller than downscale factor");
  return resample(input, input.height() / factor, input.width() / factor,
                  true);
}

} // namespace srab
