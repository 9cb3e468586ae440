// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/model.hpp"

#include <cmath>

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/rng.hpp"

namespace srab {

namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

int upsample_stages(int scale) { return scale == 4 ? 2 : 1; }

std::vector<Layer> micro_edsr_layers(const MicroEdsrConfig &cfg) {
  const int c = cfg.channels;
  std::vector<Layer> layers;
  layers.emplace_back(ConvLayer{ConvKernel(c, 3, 3, 3)});
  ResidualGroup group;
  group.scaling = cfg.residual_scaling;
  for (int b = 0; b < cfg.blocks; ++b)
    group.blocks.push_back({ConvKernel(c, c, 3, 3), ConvKernel(c, c, 3, 3)});
  layers.emplace_back(std::move(group));
  layers.emplace_back(ConvLayer{ConvKernel(c, c, 3, 3)});
  for (int s = 0; s < upsample_stages(cfg.scale); ++s) {
    layers.emplace_back(ConvLayer{ConvKernel(4 * c, c, 3, 3)});
    layers.emplace_back(PixelShuffleLayer{2});
  }
  layers.emplace_back(ConvLayer{ConvKernel(3, c, 3, 3)});
  return layers;
}

ImageTensor run_group(const ResidualGroup &group, const ImageTensor &input,
                      ForwardTrace::Entry *entry) {
  ImageTensor h = input;
  for (const ResidualBlock &block : group.blocks) {
    ImageTensor hidden = conv2d_forward(h, block.first);
    ImageTensor branch = conv2d_forward(relu_forward(hidden), block.second);
    if (entry) {
      entry->block_inputs.push_back(h);
      entry->block_hidden.push_back(std::move(hidden));
    }
    for (std::size_t i = 0; i < h.size(); ++i)
      h[i] += group.scaling * branch[i];
  }
  h += input;
  return h;
}

ImageTensor run_forward(const SRModel &model, const ImageTensor &input,
                        ForwardTrace *trace) {
  require(input.channels() == SRModel::input_channels(),
          ErrorKind::ShapeMismatch,
          "model expects 3-channel input, got " + input.shape_string());
  require(input.height() >= 1 && input.width() >= 1, ErrorKind::ShapeMismatch,
          "model input is empty");
  ImageTensor x = input;
  for (const Layer &layer : model.layers()) {
    ForwardTrace::Entry *entry = nullptr;
    if (trace) {
      trace->entries.push_back({x, {}, {}});
      entry = &trace->entries.back();
    }
    x = std::visit(
        overloaded{
            [&](const ConvLayer &l) { return conv2d_forward(x, l.kernel); },
            [&](const ReluLayer &) { return relu_forward(x); },
            [&](const ResidualGroup &g) { return run_group(g, x, entry); },
            [&](const PixelShuffleLayer &l) {
              return pixel_shuffle(x, l.factor);
            },
            [&](const BicubicLayer &l) {
              return bicubic_resize(x, x.height() * l.factor,
                                    x.width() * l.factor);
            },
        },
        layer);
  }
  return x;
}

} // namespace

void MicroEdsrConfig::validate() const {
  require(channels >= 1, ErrorKind::Configuration,
          "micro EDSR needs at least one feature channel");
  require(blocks >= 0, ErrorKind::Configuration,
          "micro EDSR block count must be >= 0");
  require(scale == 2 || scale == 4, ErrorKind::Configuration,
          "micro EDSR scale must be 2 or 4");
  require(std::isfinite(residual_scaling), ErrorKind::Configuration,
          "residual scaling must be finite");
}

SRModel::SRModel(std::string name, ModelKind kind, MicroEdsrConfig config,
                 std::vector<Layer> layers)
    : name_(std::move(name)), kind_(kind), config_(config),
      layers_(std::move(layers)) {
  int product = 1;
  for (const Layer &layer : layers_) {
    if (const auto *ps = std::get_if<PixelShuffleLayer>(&layer))
      product *= ps->factor;
    if (const auto *bi = std::get_if<BicubicLayer>(&layer))
      product *= bi->factor;
  }
  require(product == config_.scale, ErrorKind::Configuration,
          "upsampling layers do not multiply to the model scale");
}

std::vector<ConvKernel *> SRModel::kernels() {
  std::vector<ConvKernel *> out;
  for (Layer &layer : layers_) {
    if (auto *conv = std::get_if<ConvLayer>(&layer))
      out.push_back(&conv->kernel);
    if (auto *group = std::get_if<ResidualGroup>(&layer))
      for (ResidualBlock &b : group->blocks) {
        out.push_back(&b.first);
        out.push_back(&b.second);
      }
  }
  return out;
}

std::vector<const ConvKernel *> SRModel::kernels() const {
  std::vector<const ConvKernel *> out;
  for (ConvKernel *k : const_cast<SRModel *>(this)->kernels())
    out.push_back(k);
  return out;
}

std::size_t SRModel::parameter_count() const {
  std::size_t n = 0;
  for (const ConvKernel *k : kernels())
    n += k->weights.size() + k->bias.size();
  return n;
}

SRModel build_bicubic_model(int scale) {
  require(scale >= 1, ErrorKind::Configuration, "bicubic scale must be >= 1");
  MicroEdsrConfig cfg;
  cfg.channels = 0;
  cfg.blocks = 0;
  cfg.residual_scaling = 0.0;
  cfg.scale = scale;
  return SRModel("bicubic", ModelKind::Bicubic, cfg, {BicubicLayer{scale}});
}

std::string preset_name(const MicroEdsrConfig &config) {
  if (config == MicroEdsrConfig::micro())
    return "micro";
  if (config == MicroEdsrConfig::micro_large())
    return "micro-large";
  return "micro-edsr-c" + std::to_string(config.channels) + "-b" +
         std::to_string(config.blocks) + "-x" + std::to_string(config.scale);
}

SRModel build_zero_micro_edsr(const MicroEdsrConfig &config) {
  config.validate();
  return SRModel(preset_name(config), ModelKind::MicroEdsr, config,
                 micro_edsr_layers(config));
}

SRModel build_micro_edsr(const MicroEdsrConfig &config, std::uint64_t seed) {
  SRModel model = build_zero_micro_edsr(config);
  Rng rng(seed);
  for (ConvKernel *k : model.kernels()) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(k->fan_in()));
    for (double &w : k->weights)
      w = static_cast<float>(rng.uniform(-bound, bound));
    for (double &b : k->bias)
      b = static_cast<float>(rng.uniform(-bound, bound));
  }
  return model;
}

ImageTensor model_forward(const SRModel &model, const ImageTensor &input) {
  return run_forward(model, input, nullptr);
}

ForwardTrace model_forward_traced(const SRModel &model,
                                  const ImageTensor &input) {
  ForwardTrace trace;
  trace.entries.reserve(model.layers().size());
  trace.output = run_forward(model, input, &trace);
  return trace;
}

ImageTensor model_backward(const SRModel &model, const ForwardTrace &trace,
                           const ImageTensor &upstream,
                           std::vector<ConvKernelGrad> *kernel_grads) {
  require_same_shape(upstream, trace.output, "model gradient upstream");
  const auto &layers = model.layers();
  require(trace.entries.size() == layers.size(), ErrorKind::Configuration,
          "forward trace does not belong to this model");

  // Kernel slots are numbered in forward order; walk them backwards.
  std::size_t slot = model.kernels().size();
  if (kernel_grads)
    require(kernel_grads->size() == slot, ErrorKind::Configuration,
            "kernel gradient buffer size does not match the model");

  ImageTensor g = upstream;
  for (std::size_t li = layers.size(); li-- > 0;) {
    const ForwardTrace::Entry &entry = trace.entries[li];
    const Layer &layer = layers[li];
    if (const auto *conv = std::get_if<ConvLayer>(&layer)) {
      --slot;
      if (kernel_grads)
        conv2d_weight_grad(entry.input, g, conv->kernel, (*kernel_grads)[slot]);
      g = conv2d_input_grad(g, conv->kernel);
    } else if (std::holds_alternative<ReluLayer>(layer)) {
      g = relu_input_grad(g, entry.input);
    } else if (const auto *group = std::get_if<ResidualGroup>(&layer)) {
      const ImageTensor skip = g;
      for (std::size_t b = group->blocks.size(); b-- > 0;) {
        const ResidualBlock &block = group->blocks[b];
        slot -= 2;
        const ImageTensor branch_up = group->scaling * g;
        const ImageTensor activated = relu_forward(entry.block_hidden[b]);
        if (kernel_grads)
          conv2d_weight_grad(activated, branch_up, block.second,
                             (*kernel_grads)[slot + 1]);
        const ImageTensor hidden_up = relu_input_grad(
            conv2d_input_grad(branch_up, block.second), entry.block_hidden[b]);
        if (kernel_grads)
          conv2d_weight_grad(entry.block_inputs[b], hidden_up, block.first,
                             (*kernel_grads)[slot]);
        g += conv2d_input_grad(hidden_up, block.first);
      }
      g += skip;
    } else if (const auto *ps = std::get_if<PixelShuffleLayer>(&layer)) {
      g = pixel_shuffle_grad(g, ps->factor);
    } else if (std::holds_alternative<BicubicLayer>(layer)) {
      g = bicubic_resize_grad(g, entry.input.height(), entry.input.width());
    }
  }
  return g;
}

ImageTensor model_input_gradient(const SRModel &model, const ImageTensor &input,
                                 const ImageTensor &upstream) {
  return model_backward(model, model_forward_traced(model, input), upstream,
                        nullptr);
}

} // namespace srab
