// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/defenses.hpp"

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/geometry.hpp"

namespace srab {

ImageTensor resize_round_trip(const ImageTensor &x) {
  require(x.height() >= 2 && x.width() >= 2, ErrorKind::Configuration,
          "resize defense needs height and width >= 2");
  const ImageTensor smaller = bicubic_resize(x, x.height() - 1, x.width() - 1);
  return clip(bicubic_resize(smaller, x.height(), x.width()), 0.0, 1.0);
}

ImageTensor resize_defense(const SRModel &model, const ImageTensor &x) {
  return model_forward(model, resize_round_trip(x));
}

ImageTensor self_ensemble(const SRModel &model, const ImageTensor &x) {
  ImageTensor sum;
  for (int g = 0; g < kDihedralCount; ++g) {
    ImageTensor branch =
        dihedral_inverse(model_forward(model, dihedral_transform(x, g)), g);
    if (g == 0)
      sum = std::move(branch);
    else
      sum += branch;
  }
  return clip((1.0 / kDihedralCount) * sum, 0.0, 1.0);
}

} // namespace srab
