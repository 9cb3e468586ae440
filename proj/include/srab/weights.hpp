// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "srab/model.hpp"

namespace srab {

// Weight file layout, all integers little-endian:
//
//   "SRAW"                      magic
//   u8   version                (1)
//   u32  name length, bytes     model name
//   u8   kind                   0 = bicubic, 1 = micro EDSR
//   u32  channels, u32 blocks, f64 residual scaling, u32 scale
//   u32  tensor count
//   per tensor: u32 rank, rank x u32 dims, prod(dims) x f32 payload
//
// Each convolution contributes two tensors: weights (out, in, kh, kw) and
// bias (out).
inline constexpr std::uint8_t kWeightFormatVersion = 1;

std::vector<std::uint8_t> serialize_weights(const SRModel &model);
SRModel deserialize_weights(std::span<const std::uint8_t> bytes);

void save_weights(const SRModel &model, const std::filesystem::path &path);
SRModel load_weights(const std::filesystem::path &path);

/// Rounds every parameter to the nearest 32-bit float, the precision the
/// weight file stores.
void round_weights_to_f32(SRModel &model);

} // namespace srab
