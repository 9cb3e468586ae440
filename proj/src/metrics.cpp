// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "srab/error.hpp"

namespace srab {

namespace {

double psnr_from_mse(double mse) {
  if (mse == 0.0)
    return kIdenticalPsnr;
  return 10.0 * std::log10(1.0 / mse);
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]])
      ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

} // namespace

double psnr(const ImageTensor &a, const ImageTensor &b) {
  require_same_shape(a, b, "psnr");
  require(a.size() > 0, ErrorKind::EmptyRegion, "psnr of empty images");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return psnr_from_mse(sum / static_cast<double>(a.size()));
}

double outer_region_psnr(const ImageTensor &a, const ImageTensor &b,
                         const Mask &mask) {
  require_same_shape(a, b, "outer region psnr");
  require(mask.hr_mask.height() == a.height() &&
              mask.hr_mask.width() == a.width(),
          ErrorKind::ShapeMismatch,
          "HR mask " + mask.hr_mask.shape_string() + " does not match " +
              a.shape_string());
  const auto m = mask.hr_mask.data();
  double sum = 0.0;
  std::size_t count = 0;
  for (int c = 0; c < a.channels(); ++c) {
    const auto pa = a.plane(c);
    const auto pb = b.plane(c);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      if (m[i] != 0.0)
        continue;
      const double d = pa[i] - pb[i];
      sum += d * d;
      ++count;
    }
  }
  require(count > 0, ErrorKind::EmptyRegion,
          "mask leaves no outer region to measure");
  return psnr_from_mse(sum / static_cast<double>(count));
}

std::optional<double> spearman_correlation(std::span<const double> xs,
                                           std::span<const double> ys) {
  require(xs.size() == ys.size(), ErrorKind::ShapeMismatch,
          "spearman inputs differ in length");
  if (xs.size() < 2)
    return std::nullopt;
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

double mean(std::span<const double> values) {
  require(!values.empty(), ErrorKind::EmptyRegion, "mean of no values");
  double s = 0.0;
  for (double v : values)
    s += v;
  return s / static_cast<double>(values.size());
}

} // namespace srab
