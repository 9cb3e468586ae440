// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "srab/model.hpp"

namespace srab {

/// Shrinks the input by one pixel in both dimensions with bicubic
/// resampling, resizes it back, clips to [0, 1] and super-resolves.
ImageTensor resize_defense(const SRModel &model, const ImageTensor &x);

/// The resize round trip alone, without the model.
ImageTensor resize_round_trip(const ImageTensor &x);

/// Mean over the 8 dihedral transforms g of g^-1(f(g(x))), summed in
/// transform order and clipped to [0, 1].
ImageTensor self_ensemble(const SRModel &model, const ImageTensor &x);

} // namespace srab
