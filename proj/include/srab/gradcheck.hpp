// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "srab/tensor.hpp"

namespace srab {

using ScalarFn = std::function<double(const ImageTensor &)>;

/// Central-difference gradient estimate, one element at a time:
/// (f(x + h e_i) - f(x - h e_i)) / 2h.
ImageTensor finite_diff_gradient(const ScalarFn &fn, const ImageTensor &input,
                                 double step);

/// max_i |a_i - b_i| / max(max_i |b_i|, floor). Scale-relative error used
/// by the gradient checks.
double relative_error(const ImageTensor &a, const ImageTensor &b,
                      double floor = 1e-12);

} // namespace srab
