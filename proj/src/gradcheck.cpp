// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/gradcheck.hpp"

#include <algorithm>

#include "srab/error.hpp"

namespace srab {

ImageTensor finite_diff_gradient(const ScalarFn &fn, const ImageTensor &input,
                                 double step) {
  require(step > 0.0, ErrorKind::Configuration,
          "finite difference step must be positive");
  ImageTensor probe = input;
  ImageTensor grad = ImageTensor::zeros_like(input);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double x = input[i];
    probe[i] = x + step;
    const double up = fn(probe);
    probe[i] = x - step;
    const double down = fn(probe);
    probe[i] = x;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

double relative_error(const ImageTensor &a, const ImageTensor &b,
                      double floor) {
  return max_abs_diff(a, b) / std::max(linf_norm(b), floor);
}

} // namespace srab
