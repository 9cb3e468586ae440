// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "srab/tensor.hpp"

namespace srab {

inline constexpr int kDihedralCount = 8;

/// Element g of the dihedral group of the square: an optional horizontal
/// flip (g & 4) followed by (g & 3) counter-clockwise quarter turns.
/// g = 0 is the identity.
ImageTensor dihedral_transform(const ImageTensor &t, int g);
ImageTensor dihedral_inverse(const ImageTensor &t, int g);

ImageTensor rotate90(const ImageTensor &t);
ImageTensor flip_horizontal(const ImageTensor &t);

} // namespace srab
