// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/weights.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "srab/error.hpp"

namespace srab {

namespace {

static_assert(std::endian::native == std::endian::little,
              "weight I/O assumes a little-endian host");

constexpr char kMagic[4] = {'S', 'R', 'A', 'W'};

class Writer {
public:
  void bytes(const void *p, std::size_t n) {
    const auto *b = static_cast<const std::uint8_t *>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) { bytes(&v, sizeof v); }
  void f32(float v) { bytes(&v, sizeof v); }
  void f64(double v) { bytes(&v, sizeof v); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

private:
  std::vector<std::uint8_t> out_;
};

class Reader {
public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  void bytes(void *p, std::size_t n) {
    if (in_.size() - pos_ < n)
      raise(ErrorKind::TruncatedFile, "weight file ends after " +
                                          std::to_string(in_.size()) +
                                          " bytes");
    std::memcpy(p, in_.data() + pos_, n);
    pos_ += n;
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    bytes(&v, sizeof v);
    return v;
  }
  float f32() {
    float v;
    bytes(&v, sizeof v);
    return v;
  }
  double f64() {
    double v;
    bytes(&v, sizeof v);
    return v;
  }
  bool at_end() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void write_tensor(Writer &w, std::initializer_list<int> dims,
                  const std::vector<double> &values) {
  w.u32(static_cast<std::uint32_t>(dims.size()));
  for (int d : dims)
    w.u32(static_cast<std::uint32_t>(d));
  for (double v : values)
    w.f32(static_cast<float>(v));
}

void read_tensor(Reader &r, std::initializer_list<int> dims,
                 std::vector<double> &values) {
  const std::uint32_t rank = r.u32();
  std::vector<std::uint32_t> stored(rank);
  for (auto &d : stored)
    d = r.u32();
  const bool same_rank = rank == dims.size();
  bool same = same_rank;
  if (same_rank) {
    auto it = dims.begin();
    for (std::uint32_t d : stored)
      same = same && d == static_cast<std::uint32_t>(*it++);
  }
  if (!same) {
    std::string got;
    for (std::uint32_t d : stored)
      got += (got.empty() ? "" : "x") + std::to_string(d);
    raise(ErrorKind::FileShapeMismatch,
          "stored tensor shape [" + got +
              "] does not match the architecture declared in the header");
  }
  for (double &v : values)
    v = r.f32();
}

} // namespace

std::vector<std::uint8_t> serialize_weights(const SRModel &model) {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u8(kWeightFormatVersion);
  w.u32(static_cast<std::uint32_t>(model.name().size()));
  w.bytes(model.name().data(), model.name().size());
  const MicroEdsrConfig &cfg = model.config();
  w.u8(static_cast<std::uint8_t>(model.kind()));
  w.u32(static_cast<std::uint32_t>(cfg.channels));
  w.u32(static_cast<std::uint32_t>(cfg.blocks));
  w.f64(cfg.residual_scaling);
  w.u32(static_cast<std::uint32_t>(cfg.scale));
  const auto kernels = model.kernels();
  w.u32(static_cast<std::uint32_t>(2 * kernels.size()));
  for (const ConvKernel *k : kernels) {
    write_tensor(w,
                 {k->out_channels, k->in_channels, k->kernel_height,
                  k->kernel_width},
                 k->weights);
    write_tensor(w, {k->out_channels}, k->bias);
  }
  return w.take();
}

SRModel deserialize_weights(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  char magic[4];
  if (bytes.size() < sizeof magic)
    raise(ErrorKind::TruncatedFile, "weight file shorter than its magic");
  r.bytes(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0)
    raise(ErrorKind::BadMagic, "not an SRAW weight file");
  const std::uint8_t version = r.u8();
  if (version != kWeightFormatVersion)
    raise(ErrorKind::VersionMismatch,
          "weight file version " + std::to_string(version) + ", expected " +
              std::to_string(kWeightFormatVersion));
  const std::uint32_t name_length = r.u32();
  if (name_length > r.remaining())
    raise(ErrorKind::TruncatedFile, "model name runs past end of file");
  std::string name(name_length, '\0');
  r.bytes(name.data(), name.size());
  const std::uint8_t kind = r.u8();
  MicroEdsrConfig cfg;
  cfg.channels = static_cast<int>(r.u32());
  cfg.blocks = static_cast<int>(r.u32());
  cfg.residual_scaling = r.f64();
  cfg.scale = static_cast<int>(r.u32());
  const std::uint32_t tensor_count = r.u32();
  if (kind == static_cast<std::uint8_t>(ModelKind::MicroEdsr) &&
      (static_cast<std::uint32_t>(cfg.channels) > 4096u ||
       static_cast<std::uint32_t>(cfg.blocks) > 4096u))
    raise(ErrorKind::FileShapeMismatch, "implausible architecture in header");

  SRModel model = [&] {
    switch (kind) {
    case static_cast<std::uint8_t>(ModelKind::Bicubic):
      return build_bicubic_model(cfg.scale);
    case static_cast<std::uint8_t>(ModelKind::MicroEdsr):
      return build_zero_micro_edsr(cfg);
    default:
      raise(ErrorKind::FileShapeMismatch,
            "unknown model kind " + std::to_string(kind));
    }
  }();
  model.set_name(name);
  const auto kernels = model.kernels();
  if (tensor_count != 2 * kernels.size())
    raise(ErrorKind::FileShapeMismatch,
          "file stores " + std::to_string(tensor_count) +
              " tensors, architecture needs " +
              std::to_string(2 * kernels.size()));
  for (ConvKernel *k : kernels) {
    read_tensor(r,
                {k->out_channels, k->in_channels, k->kernel_height,
                 k->kernel_width},
                k->weights);
    read_tensor(r, {k->out_channels}, k->bias);
  }
  if (!r.at_end())
    raise(ErrorKind::FileShapeMismatch, "trailing bytes after last tensor");
  return model;
}

void save_weights(const SRModel &model, const std::filesystem::path &path) {
  const auto bytes = serialize_weights(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    raise(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out)
    raise(ErrorKind::Io, "failed writing " + path.string());
}

SRModel load_weights(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    raise(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_weights(bytes);
}

void round_weights_to_f32(SRModel &model) {
  for (ConvKernel *k : model.kernels()) {
    for (double &w : k->weights)
      w = static_cast<float>(w);
    for (double &b : k->bias)
      b = static_cast<float>(b);
  }
}

} // namespace srab
