// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "srab/ops.hpp"
#include "srab/tensor.hpp"

namespace srab {

struct ConvLayer {
  ConvKernel kernel;
};

struct ReluLayer {};

/// conv -> relu -> conv, added back onto its input after scaling.
struct ResidualBlock {
  ConvKernel first;
  ConvKernel second;
};

/// A chain of residual blocks wrapped in one global skip connection:
/// h <- h + scaling * block(h) for every block, then output = h + input.
struct ResidualGroup {
  std::vector<ResidualBlock> blocks;
  double scaling = 0.1;
};

struct PixelShuffleLayer {
  int factor = 2;
};

struct BicubicLayer {
  int factor = 4;
};

using Layer = std::variant<ConvLayer, ReluLayer, ResidualGroup,
                           PixelShuffleLayer, BicubicLayer>;

enum class ModelKind : std::uint8_t { Bicubic = 0, MicroEdsr = 1 };

struct MicroEdsrConfig {
  int channels = 16;
  int blocks = 4;
  double residual_scaling = 0.1;
  int scale = 4;

  static MicroEdsrConfig micro() { return {}; }
  static MicroEdsrConfig micro_large() { return {32, 8, 0.1, 4}; }

  void validate() const;
  friend bool operator==(const MicroEdsrConfig &,
                         const MicroEdsrConfig &) = default;
};

/// A differentiable super-resolution operator mapping (3, H, W) images to
/// (3, scale*H, scale*W). Immutable once built; forward and gradient calls
/// are safe to run concurrently.
class SRModel {
public:
  SRModel(std::string name, ModelKind kind, MicroEdsrConfig config,
          std::vector<Layer> layers);

  const std::string &name() const noexcept { return name_; }
  ModelKind kind() const noexcept { return kind_; }
  const MicroEdsrConfig &config() const noexcept { return config_; }
  int scale() const noexcept { return config_.scale; }
  static constexpr int input_channels() noexcept { return 3; }

  const std::vector<Layer> &layers() const noexcept { return layers_; }

  /// Every convolution in forward order (residual blocks: first, second).
  std::vector<ConvKernel *> kernels();
  std::vector<const ConvKernel *> kernels() const;
  std::size_t parameter_count() const;

  void set_name(std::string name) { name_ = std::move(name); }

private:
  std::string name_;
  ModelKind kind_;
  MicroEdsrConfig config_;
  std::vector<Layer> layers_;
};

SRModel build_bicubic_model(int scale);

/// head conv -> residual group with global skip -> conv -> log2(scale) x
/// [conv (C -> 4C), pixel shuffle x2] -> tail conv to 3 channels. Weights
/// and biases drawn uniformly in [-k, k], k = fan_in^-1/2, at 32-bit
/// precision.
SRModel build_micro_edsr(const MicroEdsrConfig &config, std::uint64_t seed);

/// Same architecture with every weight and bias set to zero.
SRModel build_zero_micro_edsr(const MicroEdsrConfig &config);

std::string preset_name(const MicroEdsrConfig &config);

ImageTensor model_forward(const SRModel &model, const ImageTensor &input);

/// Vector-Jacobian product: d<upstream, f(x)>/dx.
ImageTensor model_input_gradient(const SRModel &model, const ImageTensor &input,
                                 const ImageTensor &upstream);

/// Intermediate activations kept for the reverse pass.
struct ForwardTrace {
  struct Entry {
    ImageTensor input;
    std::vector<ImageTensor> block_inputs;
    std::vector<ImageTensor> block_hidden; // first conv output, pre-relu
  };
  std::vector<Entry> entries;
  ImageTensor output;
};

ForwardTrace model_forward_traced(const SRModel &model,
                                  const ImageTensor &input);

/// Reverse pass over a recorded trace. When `kernel_grads` is non-null it
/// must hold one entry per model kernel (in kernels() order); parameter
/// gradients are accumulated into it.
ImageTensor model_backward(const SRModel &model, const ForwardTrace &trace,
                           const ImageTensor &upstream,
                           std::vector<ConvKernelGrad> *kernel_grads);

} // namespace srab
