// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/geometry.hpp"

#include "srab/error.hpp"

namespace srab {

ImageTensor rotate90(const ImageTensor &t) {
  const int h = t.height();
  const int w = t.width();
  ImageTensor out(t.channels(), w, h);
  for (int c = 0; c < t.channels(); ++c)
    for (int y = 0; y < w; ++y)
      for (int x = 0; x < h; ++x)
        out.at(c, y, x) = t.at(c, x, w - 1 - y);
  return out;
}

ImageTensor flip_horizontal(const ImageTensor &t) {
  ImageTensor out = ImageTensor::zeros_like(t);
  for (int c = 0; c < t.channels(); ++c)
    for (int y = 0; y < t.height(); ++y)
      for (int x = 0; x < t.width(); ++x)
        out.at(c, y, x) = t.at(c, y, t.width() - 1 - x);
  return out;
}

ImageTensor dihedral_transform(const ImageTensor &t, int g) {
  require(g >= 0 && g < kDihedralCount, ErrorKind::Configuration,
          "dihedral index out of range");
  ImageTensor out = (g & 4) ? flip_horizontal(t) : t;
  for (int k = 0; k < (g & 3); ++k)
    out = rotate90(out);
  return out;
}

ImageTensor dihedral_inverse(const ImageTensor &t, int g) {
  require(g >= 0 && g < kDihedralCount, ErrorKind::Configuration,
          "dihedral index out of range");
  ImageTensor out = t;
  for (int k = 0; k < (4 - (g & 3)) % 4; ++k)
    out = rotate90(out);
  return (g & 4) ? flip_horizontal(out) : out;
}

} // namespace srab
