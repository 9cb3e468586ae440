// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srab/attacks.hpp"
#include "srab/dataset.hpp"
#include "srab/model.hpp"
#include "srab/report.hpp"

namespace srab {

enum class AttackKind { Basic, Partial, Universal, Targeted };
enum class DefenseMethod { Resize, Ensemble };

std::string to_string(AttackKind kind);
AttackKind parse_attack_kind(const std::string &text);
std::string to_string(DefenseMethod method);
DefenseMethod parse_defense_method(const std::string &text);

struct EvalOptions {
  AttackKind kind = AttackKind::Basic;
  int iterations = 50;
  /// Image i is attacked with seed + i.
  std::uint64_t seed = 0;
  /// Round attacked LR images to 8 bits before measuring.
  bool quantize = true;
  /// Partial attacks: shared LR mask; the center mask of each image when
  /// empty.
  std::optional<ImageTensor> mask;
  int jobs = 1;
};

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads. The first exception
/// thrown is rethrown after all workers finish.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)> &fn);

/// One attacked image plus the measurements of the evaluation protocol.
struct AttackedImage {
  ImageTensor adversarial; // quantized when requested
  ImageTensor clean_sr;    // clip(f(x0))
  ImageTensor attacked_sr; // clip(f(x))
  double lr_psnr = 0.0;
  double sr_psnr = 0.0;
  std::optional<double> outer_psnr;
};

/// Measures a prepared adversarial input against x0.
AttackedImage measure_attack(const SRModel &model, const ImageTensor &x0,
                             ImageTensor adversarial, bool quantize,
                             const Mask *mask);

/// Basic or partial attack on one LR image at budget `alpha`.
AttackedImage attack_image(const SRModel &model, const ImageTensor &x0,
                           double alpha, std::uint64_t seed,
                           const EvalOptions &options);

/// One report entry per (alpha, image) in that order. Universal attacks fit
/// one perturbation per alpha on the center crops (smallest image size)
/// of the whole dataset. Targeted attacks need a target and are rejected.
EvalReport evaluate_attack(const SRModel &model, const Dataset &dataset,
                           const std::vector<double> &alphas,
                           const EvalOptions &options);

/// matrix[s][t]: mean SR-PSNR of model t on basic attacks crafted against
/// model s. Needs at least two models.
EvalReport transfer_matrix(const std::vector<const SRModel *> &models,
                           const Dataset &dataset, double alpha,
                           const EvalOptions &options);

/// Pairs each image's robustness index (seed + i) with its basic-attack
/// SR-PSNR at the same alpha, plus their Spearman correlation.
EvalReport robustness_sweep(const SRModel &model, const Dataset &dataset,
                            double alpha, int samples,
                            const EvalOptions &options);

ImageTensor defended_output(const SRModel &model, const ImageTensor &x,
                            DefenseMethod method);

/// Basic attacks at `alpha`; each entry also carries the PSNR between the
/// clean SR output and the defended SR output of the attacked image.
EvalReport evaluate_defense(const SRModel &model, const Dataset &dataset,
                            double alpha, DefenseMethod method,
                            const EvalOptions &options);

/// Held-out evaluation of a universal perturbation, measured against HR
/// ground truth.
struct UniversalEvaluation {
  UniversalResult attack;
  std::vector<double> clean_psnr;    // PSNR(hr, clip f(x0))
  std::vector<double> attacked_psnr; // PSNR(hr, clip f(q(x0 + delta)))
};

UniversalEvaluation evaluate_universal(const SRModel &model,
                                      const Dataset &train,
                                      const Dataset &heldout, double alpha,
                                      const EvalOptions &options);

} // namespace srab
