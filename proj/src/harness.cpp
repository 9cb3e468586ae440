// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "srab/defenses.hpp"
#include "srab/error.hpp"
#include "srab/image_io.hpp"
#include "srab/metrics.hpp"
#include "srab/robustness.hpp"

namespace srab {

namespace {

EvalReport base_report(const Dataset &dataset, std::vector<std::string> models,
                       const EvalOptions &options, AttackKind kind) {
  require(!dataset.images.empty(), ErrorKind::Data,
          "dataset '" + dataset.name + "' has no images");
  EvalReport r;
  r.created = timestamp_from_environment();
  r.dataset = dataset.name;
  r.models = std::move(models);
  r.attack.kind = to_string(kind);
  r.attack.iterations = options.iterations;
  r.attack.seed = options.seed;
  r.attack.quantized = options.quantize;
  return r;
}

AttackConfig make_config(double alpha, std::uint64_t seed,
                         const EvalOptions &options) {
  AttackConfig cfg;
  cfg.alpha = alpha;
  cfg.iterations = options.iterations;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

Mask mask_for(const ImageTensor &x0, const SRModel &model,
              const EvalOptions &options) {
  if (options.mask)
    return make_mask(*options.mask, model.scale());
  return center_mask(x0.height(), x0.width(), model.scale());
}

ImageTensor clipped_forward(const SRModel &model, const ImageTensor &x) {
  return clip(model_forward(model, x), 0.0, 1.0);
}

std::pair<int, int> min_dims(const Dataset &dataset) {
  int h = dataset.images.front().lr.height();
  int w = dataset.images.front().lr.width();
  for (const DatasetImage &img : dataset.images) {
    h = std::min(h, img.lr.height());
    w = std::min(w, img.lr.width());
  }
  return {h, w};
}

UniversalResult fit_universal(const SRModel &model, const Dataset &dataset,
                              double alpha, const EvalOptions &options) {
  const auto [h, w] = min_dims(dataset);
  const std::vector<ImageTensor> lr = dataset.lr_images();
  return universal_attack(model, lr, h, w,
                          make_config(alpha, options.seed, options));
}

} // namespace

std::string to_string(AttackKind kind) {
  switch (kind) {
  case AttackKind::Basic:
    return "basic";
  case AttackKind::Partial:
    return "partial";
  case AttackKind::Universal:
    return "universal";
  case AttackKind::Targeted:
    return "targeted";
  }
  return "unknown";
}

AttackKind parse_attack_kind(const std::string &text) {
  for (AttackKind k : {AttackKind::Basic, AttackKind::Partial,
                       AttackKind::Universal, AttackKind::Targeted})
    if (to_string(k) == text)
      return k;
  raise(ErrorKind::Configuration, "unknown attack kind '" + text + "'");
}

std::string to_string(DefenseMethod method) {
  return method == DefenseMethod::Resize ? "resize" : "ensemble";
}

DefenseMethod parse_defense_method(const std::string &text) {
  if (text == "resize")
    return DefenseMethod::Resize;
  if (text == "ensemble")
    return DefenseMethod::Ensemble;
  raise(ErrorKind::Configuration, "unknown defense method '" + text + "'");
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)> &fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t)
    threads.emplace_back(work);
  for (std::thread &t : threads)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

AttackedImage measure_attack(const SRModel &model, const ImageTensor &x0,
                             ImageTensor adversarial, bool quantize,
                             const Mask *mask) {
  AttackedImage out;
  out.adversarial = quantize ? quantize_8bit(adversarial) : std::move(adversarial);
  out.clean_sr = clipped_forward(model, x0);
  out.attacked_sr = clipped_forward(model, out.adversarial);
  out.lr_psnr = psnr(x0, out.adversarial);
  out.sr_psnr = psnr(out.clean_sr, out.attacked_sr);
  if (mask)
    out.outer_psnr = outer_region_psnr(out.clean_sr, out.attacked_sr, *mask);
  return out;
}

AttackedImage attack_image(const SRModel &model, const ImageTensor &x0,
                           double alpha, std::uint64_t seed,
                           const EvalOptions &options) {
  const AttackConfig cfg = make_config(alpha, seed, options);
  switch (options.kind) {
  case AttackKind::Basic:
    return measure_attack(model, x0, ifgsm_basic(model, x0, cfg).adversarial,
                          options.quantize, nullptr);
  case AttackKind::Partial: {
    const Mask mask = mask_for(x0, model, options);
    return measure_attack(model, x0,
                          partial_attack(model, x0, mask, cfg).adversarial,
                          options.quantize, &mask);
  }
  case AttackKind::Universal:
  case AttackKind::Targeted:
    break;
  }
  raise(ErrorKind::Configuration,
        to_string(options.kind) + " attacks are not per-image attacks");
}

EvalReport evaluate_attack(const SRModel &model, const Dataset &dataset,
                           const std::vector<double> &alphas,
                           const EvalOptions &options) {
  require(options.kind != AttackKind::Targeted, ErrorKind::Configuration,
          "targeted attacks need an explicit target and cannot be swept");
  require(!alphas.empty(), ErrorKind::Configuration, "no alpha values given");
  EvalReport report = base_report(dataset, {model.name()}, options, options.kind);
  const std::size_t n = dataset.images.size();
  report.entries.resize(alphas.size() * n);

  for (std::size_t a = 0; a < alphas.size(); ++a) {
    std::optional<UniversalResult> universal;
    if (options.kind == AttackKind::Universal)
      universal = fit_universal(model, dataset, alphas[a], options);
    parallel_for(n, options.jobs, [&](std::size_t i) {
      const DatasetImage &img = dataset.images[i];
      const AttackedImage r =
          universal ? measure_attack(model, img.lr,
                                     apply_universal(img.lr, universal->delta),
                                     options.quantize, nullptr)
                    : attack_image(model, img.lr, alphas[a], options.seed + i,
                                   options);
      ImageEntry &e = report.entries[a * n + i];
      e.image_id = img.id;
      e.model = model.name();
      e.alpha = alphas[a];
      e.lr_psnr = r.lr_psnr;
      e.sr_psnr = r.sr_psnr;
      e.outer_psnr = r.outer_psnr;
    });
  }
  summarize(report);
  return report;
}

EvalReport transfer_matrix(const std::vector<const SRModel *> &models,
                           const Dataset &dataset, double alpha,
                           const EvalOptions &options) {
  require(models.size() >= 2, ErrorKind::Configuration,
          "a transfer matrix needs at least two models");
  std::vector<std::string> names;
  for (const SRModel *m : models)
    names.push_back(m->name());
  EvalOptions basic = options;
  basic.kind = AttackKind::Basic;
  EvalReport report = base_report(dataset, names, basic, AttackKind::Basic);

  const std::size_t n = dataset.images.size();
  const std::size_t k = models.size();
  report.entries.resize(k * k * n);
  TransferMatrix matrix{names, names, std::vector(k, std::vector(k, 0.0))};
  for (std::size_t s = 0; s < k; ++s) {
    parallel_for(n, options.jobs, [&](std::size_t i) {
      const DatasetImage &img = dataset.images[i];
      const AttackConfig cfg = make_config(alpha, options.seed + i, options);
      const ImageTensor adv = ifgsm_basic(*models[s], img.lr, cfg).adversarial;
      for (std::size_t t = 0; t < k; ++t) {
        const AttackedImage r =
            measure_attack(*models[t], img.lr, adv, options.quantize, nullptr);
        ImageEntry &e = report.entries[(s * k + t) * n + i];
        e.image_id = img.id;
        e.model = names[s] + "->" + names[t];
        e.alpha = alpha;
        e.lr_psnr = r.lr_psnr;
        e.sr_psnr = r.sr_psnr;
      }
    });
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<double> values;
      for (std::size_t i = 0; i < n; ++i)
        values.push_back(report.entries[(s * k + t) * n + i].sr_psnr);
      matrix.mean_sr_psnr[s][t] = mean(values);
    }
  }
  report.transfer = std::move(matrix);
  summarize(report);
  return report;
}

EvalReport robustness_sweep(const SRModel &model, const Dataset &dataset,
                            double alpha, int samples,
                            const EvalOptions &options) {
  EvalOptions basic = options;
  basic.kind = AttackKind::Basic;
  EvalReport report =
      base_report(dataset, {model.name()}, basic, AttackKind::Basic);
  const std::size_t n = dataset.images.size();
  report.entries.resize(n);
  parallel_for(n, options.jobs, [&](std::size_t i) {
    const DatasetImage &img = dataset.images[i];
    const AttackedImage r =
        attack_image(model, img.lr, alpha, options.seed + i, basic);
    ImageEntry &e = report.entries[i];
    e.image_id = img.id;
    e.model = model.name();
    e.alpha = alpha;
    e.lr_psnr = r.lr_psnr;
    e.sr_psnr = r.sr_psnr;
    e.robustness_index =
        robustness_index(model, img.lr, alpha, samples, options.seed + i).index;
  });
  std::vector<double> indices, sr;
  for (const ImageEntry &e : report.entries) {
    indices.push_back(*e.robustness_index);
    sr.push_back(e.sr_psnr);
  }
  report.spearman_requested = true;
  report.spearman = spearman_correlation(indices, sr);
  summarize(report);
  return report;
}

ImageTensor defended_output(const SRModel &model, const ImageTensor &x,
                            DefenseMethod method) {
  if (method == DefenseMethod::Resize)
    return clip(resize_defense(model, x), 0.0, 1.0);
  return self_ensemble(model, x);
}

EvalReport evaluate_defense(const SRModel &model, const Dataset &dataset,
                            double alpha, DefenseMethod method,
                            const EvalOptions &options) {
  EvalOptions basic = options;
  basic.kind = AttackKind::Basic;
  EvalReport report =
      base_report(dataset, {model.name()}, basic, AttackKind::Basic);
  report.attack.defense = to_string(method);
  const std::size_t n = dataset.images.size();
  report.entries.resize(n);
  parallel_for(n, options.jobs, [&](std::size_t i) {
    const DatasetImage &img = dataset.images[i];
    const AttackedImage r =
        attack_image(model, img.lr, alpha, options.seed + i, basic);
    ImageEntry &e = report.entries[i];
    e.image_id = img.id;
    e.model = model.name();
    e.alpha = alpha;
    e.lr_psnr = r.lr_psnr;
    e.sr_psnr = r.sr_psnr;
    e.defended_sr_psnr =
        psnr(r.clean_sr, defended_output(model, r.adversarial, method));
  });
  summarize(report);
  return report;
}

UniversalEvaluation evaluate_universal(const SRModel &model,
                                      const Dataset &train,
                                      const Dataset &heldout, double alpha,
                                      const EvalOptions &options) {
  require(!train.images.empty() && !heldout.images.empty(), ErrorKind::Data,
          "universal evaluation needs training and held-out images");
  UniversalEvaluation out{fit_universal(model, train, alpha, options), {}, {}};
  const std::size_t n = heldout.images.size();
  out.clean_psnr.resize(n);
  out.attacked_psnr.resize(n);
  parallel_for(n, options.jobs, [&](std::size_t i) {
    const DatasetImage &img = heldout.images[i];
    ImageTensor adv = apply_universal(img.lr, out.attack.delta);
    if (options.quantize)
      adv = quantize_8bit(adv);
    out.clean_psnr[i] = psnr(img.hr, clipped_forward(model, img.lr));
    out.attacked_psnr[i] = psnr(img.hr, clipped_forward(model, adv));
  });
  return out;
}

} // namespace srab
