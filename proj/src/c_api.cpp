// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/srab.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "srab/attacks.hpp"
#include "srab/dataset.hpp"
#include "srab/error.hpp"
#include "srab/harness.hpp"
#include "srab/image_io.hpp"
#include "srab/metrics.hpp"
#include "srab/report.hpp"
#include "srab/robustness.hpp"
#include "srab/trainer.hpp"
#include "srab/weights.hpp"

struct srab_image {
  srab::ImageTensor tensor;
};

struct srab_model {
  srab::SRModel model;
};

struct srab_dataset {
  srab::Dataset dataset;
};

struct srab_report {
  srab::EvalReport report;
};

namespace {

thread_local std::string last_error;

srab_status status_for(srab::ErrorKind kind) {
  using srab::ErrorKind;
  switch (kind) {
  case ErrorKind::Configuration:
    return SRAB_ERR_CONFIGURATION;
  case ErrorKind::ShapeMismatch:
    return SRAB_ERR_SHAPE_MISMATCH;
  case ErrorKind::BadMagic:
    return SRAB_ERR_BAD_MAGIC;
  case ErrorKind::VersionMismatch:
    return SRAB_ERR_VERSION_MISMATCH;
  case ErrorKind::FileShapeMismatch:
    return SRAB_ERR_FILE_SHAPE_MISMATCH;
  case ErrorKind::TruncatedFile:
    return SRAB_ERR_TRUNCATED_FILE;
  case ErrorKind::Io:
    return SRAB_ERR_IO;
  case ErrorKind::UnsupportedBitDepth:
    return SRAB_ERR_UNSUPPORTED_BIT_DEPTH;
  case ErrorKind::UnsupportedFormat:
    return SRAB_ERR_UNSUPPORTED_FORMAT;
  case ErrorKind::EmptyRegion:
    return SRAB_ERR_EMPTY_REGION;
  case ErrorKind::Data:
    return SRAB_ERR_DATA;
  }
  return SRAB_ERR_INTERNAL;
}

srab_status fail(srab_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F> srab_status guarded(F &&body) {
  try {
    body();
    return SRAB_OK;
  } catch (const srab::Error &e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(SRAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(SRAB_ERR_INTERNAL, e.what());
  }
}

#define SRAB_REQUIRE_ARG(cond)                                                 \
  do {                                                                         \
    if (!(cond))                                                               \
      return fail(SRAB_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);      \
  } while (0)

srab_image *wrap(srab::ImageTensor t) { return new srab_image{std::move(t)}; }

srab::MicroEdsrConfig preset_config(const std::string &preset) {
  if (preset == "micro")
    return srab::MicroEdsrConfig::micro();
  if (preset == "micro-large")
    return srab::MicroEdsrConfig::micro_large();
  srab::raise(srab::ErrorKind::Configuration,
              "unknown model preset '" + preset + "'");
}

srab::AttackKind to_kind(srab_attack_kind kind) {
  switch (kind) {
  case SRAB_ATTACK_BASIC:
    return srab::AttackKind::Basic;
  case SRAB_ATTACK_PARTIAL:
    return srab::AttackKind::Partial;
  case SRAB_ATTACK_UNIVERSAL:
    return srab::AttackKind::Universal;
  case SRAB_ATTACK_TARGETED:
    return srab::AttackKind::Targeted;
  }
  srab::raise(srab::ErrorKind::Configuration, "unknown attack kind");
}

srab::ImageTensor binary_mask(const srab::ImageTensor &image) {
  srab::ImageTensor m(1, image.height(), image.width());
  const auto plane = image.plane(0);
  for (std::size_t i = 0; i < plane.size(); ++i)
    m[i] = plane[i] >= 0.5 ? 1.0 : 0.0;
  return m;
}

srab::Mask resolve_mask(const srab_image *mask, int height, int width,
                        int scale) {
  if (mask)
    return srab::make_mask(binary_mask(mask->tensor), scale);
  return srab::center_mask(height, width, scale);
}

srab::AttackConfig to_config(const srab_attack_options &o) {
  srab::AttackConfig cfg;
  cfg.alpha = o.alpha;
  cfg.iterations = o.iterations;
  cfg.seed = o.seed;
  return cfg;
}

srab::EvalOptions to_eval(const srab_eval_options &o) {
  srab::EvalOptions e;
  e.kind = to_kind(o.kind);
  e.iterations = o.iterations;
  e.seed = o.seed;
  e.quantize = o.quantize != 0;
  e.jobs = o.jobs;
  if (o.mask)
    e.mask = binary_mask(o.mask->tensor);
  return e;
}

std::optional<double> from_nan(double v) {
  if (std::isnan(v))
    return std::nullopt;
  return v;
}

double to_nan(const std::optional<double> &v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

extern "C" {

const char *srab_version(void) { return srab::kToolkitVersion; }

const char *srab_status_name(srab_status status) {
  switch (status) {
  case SRAB_OK:
    return "ok";
  case SRAB_ERR_CONFIGURATION:
    return "configuration error";
  case SRAB_ERR_SHAPE_MISMATCH:
    return "shape mismatch";
  case SRAB_ERR_BAD_MAGIC:
    return "bad magic";
  case SRAB_ERR_VERSION_MISMATCH:
    return "version mismatch";
  case SRAB_ERR_FILE_SHAPE_MISMATCH:
    return "file shape mismatch";
  case SRAB_ERR_TRUNCATED_FILE:
    return "truncated file";
  case SRAB_ERR_IO:
    return "i/o error";
  case SRAB_ERR_UNSUPPORTED_BIT_DEPTH:
    return "unsupported bit depth";
  case SRAB_ERR_UNSUPPORTED_FORMAT:
    return "unsupported format";
  case SRAB_ERR_EMPTY_REGION:
    return "empty region";
  case SRAB_ERR_DATA:
    return "data error";
  case SRAB_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case SRAB_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *srab_last_error(void) { return last_error.c_str(); }

// Images

srab_status srab_image_create(int channels, int height, int width,
                              const double *data, srab_image **out) {
  SRAB_REQUIRE_ARG(out);
  SRAB_REQUIRE_ARG(channels >= 1 && height >= 1 && width >= 1);
  return guarded([&] {
    srab::ImageTensor t(channels, height, width);
    if (data)
      std::memcpy(t.data().data(), data, t.size() * sizeof(double));
    *out = wrap(std::move(t));
  });
}

srab_status srab_image_load_png(const char *path, srab_image **out) {
  SRAB_REQUIRE_ARG(path && out);
  return guarded([&] { *out = wrap(srab::load_png(path)); });
}

srab_status srab_image_save_png(const srab_image *image, const char *path) {
  SRAB_REQUIRE_ARG(image && path);
  return guarded([&] { srab::save_png(image->tensor, path); });
}

srab_status srab_image_quantize(const srab_image *image, srab_image **out) {
  SRAB_REQUIRE_ARG(image && out);
  return guarded([&] { *out = wrap(srab::quantize_8bit(image->tensor)); });
}

int srab_image_channels(const srab_image *image) {
  return image ? image->tensor.channels() : 0;
}

int srab_image_height(const srab_image *image) {
  return image ? image->tensor.height() : 0;
}

int srab_image_width(const srab_image *image) {
  return image ? image->tensor.width() : 0;
}

srab_status srab_image_read(const srab_image *image, double *out,
                            size_t count) {
  SRAB_REQUIRE_ARG(image && out);
  if (count != image->tensor.size())
    return fail(SRAB_ERR_SHAPE_MISMATCH,
                "buffer holds " + std::to_string(count) + " values, image has " +
                    std::to_string(image->tensor.size()));
  std::memcpy(out, image->tensor.data().data(), count * sizeof(double));
  return SRAB_OK;
}

void srab_image_free(srab_image *image) { delete image; }

// Models

srab_status srab_model_bicubic(int scale, srab_model **out) {
  SRAB_REQUIRE_ARG(out);
  return guarded(
      [&] { *out = new srab_model{srab::build_bicubic_model(scale)}; });
}

srab_status srab_model_micro(const char *preset, uint64_t seed,
                             srab_model **out) {
  SRAB_REQUIRE_ARG(preset && out);
  return guarded([&] {
    *out = new srab_model{srab::build_micro_edsr(preset_config(preset), seed)};
  });
}

srab_status srab_model_load(const char *path, srab_model **out) {
  SRAB_REQUIRE_ARG(path && out);
  return guarded([&] { *out = new srab_model{srab::load_weights(path)}; });
}

srab_status srab_model_save(const srab_model *model, const char *path) {
  SRAB_REQUIRE_ARG(model && path);
  return guarded([&] { srab::save_weights(model->model, path); });
}

const char *srab_model_name(const srab_model *model) {
  return model ? model->model.name().c_str() : "";
}

int srab_model_scale(const srab_model *model) {
  return model ? model->model.scale() : 0;
}

srab_status srab_model_forward(const srab_model *model,
                               const srab_image *input, srab_image **out) {
  SRAB_REQUIRE_ARG(model && input && out);
  return guarded(
      [&] { *out = wrap(srab::model_forward(model->model, input->tensor)); });
}

void srab_model_free(srab_model *model) { delete model; }

// Datasets

srab_status srab_dataset_load_dir(const char *dir, int scale,
                                  srab_dataset **out) {
  SRAB_REQUIRE_ARG(dir && out);
  return guarded(
      [&] { *out = new srab_dataset{srab::load_image_dir(dir, scale)}; });
}

srab_status srab_dataset_slice(const srab_dataset *dataset, size_t first,
                               size_t count, srab_dataset **out) {
  SRAB_REQUIRE_ARG(dataset && out);
  const auto &images = dataset->dataset.images;
  if (first > images.size() || count > images.size() - first)
    return fail(SRAB_ERR_CONFIGURATION,
                "slice exceeds the dataset of " +
                    std::to_string(images.size()) + " images");
  return guarded([&] {
    srab::Dataset d = dataset->dataset;
    d.images.assign(images.begin() + first, images.begin() + first + count);
    *out = new srab_dataset{std::move(d)};
  });
}

size_t srab_dataset_size(const srab_dataset *dataset) {
  return dataset ? dataset->dataset.images.size() : 0;
}

const char *srab_dataset_image_id(const srab_dataset *dataset, size_t index) {
  if (!dataset || index >= dataset->dataset.images.size())
    return nullptr;
  return dataset->dataset.images[index].id.c_str();
}

srab_status srab_dataset_lr(const srab_dataset *dataset, size_t index,
                            srab_image **out) {
  SRAB_REQUIRE_ARG(dataset && out);
  SRAB_REQUIRE_ARG(index < dataset->dataset.images.size());
  return guarded([&] { *out = wrap(dataset->dataset.images[index].lr); });
}

srab_status srab_dataset_hr(const srab_dataset *dataset, size_t index,
                            srab_image **out) {
  SRAB_REQUIRE_ARG(dataset && out);
  SRAB_REQUIRE_ARG(index < dataset->dataset.images.size());
  return guarded([&] { *out = wrap(dataset->dataset.images[index].hr); });
}

void srab_dataset_free(srab_dataset *dataset) { delete dataset; }

// Training

void srab_train_options_default(srab_train_options *options) {
  if (!options)
    return;
  const srab::TrainOptions d;
  options->steps = d.steps;
  options->patch_size = d.patch_size;
  options->batch_size = d.batch_size;
  options->learning_rate = d.learning_rate;
  options->seed = d.seed;
  options->augment = d.augment ? 1 : 0;
}

srab_status srab_train(const char *preset, const srab_dataset *dataset,
                       const srab_train_options *options,
                       srab_progress_fn progress, void *user,
                       srab_model **out) {
  SRAB_REQUIRE_ARG(preset && dataset && options && out);
  return guarded([&] {
    srab::TrainOptions o;
    o.steps = options->steps;
    o.patch_size = options->patch_size;
    o.batch_size = options->batch_size;
    o.learning_rate = options->learning_rate;
    o.seed = options->seed;
    o.augment = options->augment != 0;
    if (progress)
      o.on_step = [progress, user](int step, double loss) {
        progress(step, loss, user);
      };
    const std::vector<srab::ImageTensor> hr = dataset->dataset.hr_images();
    *out = new srab_model{
        srab::train_micro_model(preset_config(preset), hr, o).model};
  });
}

// Attacks

void srab_attack_options_default(srab_attack_options *options) {
  if (!options)
    return;
  const srab::AttackConfig d;
  options->kind = SRAB_ATTACK_BASIC;
  options->alpha = d.alpha;
  options->iterations = d.iterations;
  options->seed = d.seed;
  options->mask = nullptr;
  options->target = nullptr;
}

srab_status srab_attack_kind_parse(const char *text, srab_attack_kind *out) {
  SRAB_REQUIRE_ARG(text && out);
  return guarded([&] {
    switch (srab::parse_attack_kind(text)) {
    case srab::AttackKind::Basic:
      *out = SRAB_ATTACK_BASIC;
      break;
    case srab::AttackKind::Partial:
      *out = SRAB_ATTACK_PARTIAL;
      break;
    case srab::AttackKind::Universal:
      *out = SRAB_ATTACK_UNIVERSAL;
      break;
    case srab::AttackKind::Targeted:
      *out = SRAB_ATTACK_TARGETED;
      break;
    }
  });
}

srab_status srab_attack_run(const srab_model *model, const srab_image *x0,
                            const srab_attack_options *options,
                            srab_image **adversarial) {
  SRAB_REQUIRE_ARG(model && x0 && options && adversarial);
  return guarded([&] {
    const srab::AttackConfig cfg = to_config(*options);
    const srab::ImageTensor &x = x0->tensor;
    switch (options->kind) {
    case SRAB_ATTACK_BASIC:
      *adversarial = wrap(srab::ifgsm_basic(model->model, x, cfg).adversarial);
      return;
    case SRAB_ATTACK_PARTIAL: {
      const srab::Mask mask = resolve_mask(options->mask, x.height(), x.width(),
                                           model->model.scale());
      *adversarial =
          wrap(srab::partial_attack(model->model, x, mask, cfg).adversarial);
      return;
    }
    case SRAB_ATTACK_TARGETED:
      srab::require(options->target != nullptr, srab::ErrorKind::Configuration,
                    "targeted attack needs a target image");
      *adversarial = wrap(srab::targeted_attack(model->model, x,
                                                options->target->tensor, cfg)
                              .adversarial);
      return;
    case SRAB_ATTACK_UNIVERSAL:
      break;
    }
    srab::raise(srab::ErrorKind::Configuration,
                "universal perturbations are fitted with srab_universal_fit");
  });
}

srab_status srab_universal_fit(const srab_model *model,
                               const srab_image *const *images, size_t count,
                               const srab_attack_options *options,
                               srab_image **delta) {
  SRAB_REQUIRE_ARG(model && images && options && delta && count > 0);
  for (size_t i = 0; i < count; ++i)
    SRAB_REQUIRE_ARG(images[i]);
  return guarded([&] {
    std::vector<srab::ImageTensor> lr;
    int h = images[0]->tensor.height();
    int w = images[0]->tensor.width();
    for (size_t i = 0; i < count; ++i) {
      lr.push_back(images[i]->tensor);
      h = std::min(h, lr.back().height());
      w = std::min(w, lr.back().width());
    }
    *delta = wrap(
        srab::universal_attack(model->model, lr, h, w, to_config(*options))
            .delta);
  });
}

srab_status srab_universal_apply(const srab_image *image,
                                 const srab_image *delta, srab_image **out) {
  SRAB_REQUIRE_ARG(image && delta && out);
  return guarded([&] {
    *out = wrap(srab::apply_universal(image->tensor, delta->tensor));
  });
}

srab_status srab_attack_loss(const srab_model *model, const srab_image *x,
                             const srab_image *reference, double *out) {
  SRAB_REQUIRE_ARG(model && x && reference && out);
  return guarded([&] {
    *out = srab::attack_loss(model->model, x->tensor, reference->tensor);
  });
}

// Metrics

srab_status srab_psnr(const srab_image *a, const srab_image *b, double *out) {
  SRAB_REQUIRE_ARG(a && b && out);
  return guarded([&] { *out = srab::psnr(a->tensor, b->tensor); });
}

srab_status srab_outer_psnr(const srab_image *a, const srab_image *b,
                            const srab_image *lr_mask, int scale,
                            double *out) {
  SRAB_REQUIRE_ARG(a && b && out && scale >= 1);
  return guarded([&] {
    const srab::Mask mask =
        resolve_mask(lr_mask, a->tensor.height() / scale,
                     a->tensor.width() / scale, scale);
    *out = srab::outer_region_psnr(a->tensor, b->tensor, mask);
  });
}

srab_status srab_robustness_index(const srab_model *model,
                                  const srab_image *x0, double alpha,
                                  int samples, uint64_t seed, double *out) {
  SRAB_REQUIRE_ARG(model && x0 && out);
  return guarded([&] {
    *out = srab::robustness_index(model->model, x0->tensor, alpha, samples,
                                  seed)
               .index;
  });
}

// Defenses

srab_status srab_defense_parse(const char *text, srab_defense *out) {
  SRAB_REQUIRE_ARG(text && out);
  if (std::strcmp(text, "none") == 0) {
    *out = SRAB_DEFENSE_NONE;
    return SRAB_OK;
  }
  return guarded([&] {
    *out = srab::parse_defense_method(text) == srab::DefenseMethod::Resize
               ? SRAB_DEFENSE_RESIZE
               : SRAB_DEFENSE_ENSEMBLE;
  });
}

srab_status srab_defended_forward(const srab_model *model, const srab_image *x,
                                  srab_defense defense, srab_image **out) {
  SRAB_REQUIRE_ARG(model && x && out);
  return guarded([&] {
    switch (defense) {
    case SRAB_DEFENSE_NONE:
      *out = wrap(srab::clip(srab::model_forward(model->model, x->tensor), 0.0,
                             1.0));
      return;
    case SRAB_DEFENSE_RESIZE:
      *out = wrap(srab::defended_output(model->model, x->tensor,
                                        srab::DefenseMethod::Resize));
      return;
    case SRAB_DEFENSE_ENSEMBLE:
      *out = wrap(srab::defended_output(model->model, x->tensor,
                                        srab::DefenseMethod::Ensemble));
      return;
    }
    srab::raise(srab::ErrorKind::Configuration, "unknown defense");
  });
}

// Evaluation

void srab_eval_options_default(srab_eval_options *options) {
  if (!options)
    return;
  const srab::EvalOptions d;
  options->kind = SRAB_ATTACK_BASIC;
  options->iterations = d.iterations;
  options->seed = d.seed;
  options->quantize = d.quantize ? 1 : 0;
  options->jobs = d.jobs;
  options->mask = nullptr;
}

srab_status srab_evaluate_attack(const srab_model *model,
                                 const srab_dataset *dataset,
                                 const double *alphas, size_t alpha_count,
                                 const srab_eval_options *options,
                                 srab_report **out) {
  SRAB_REQUIRE_ARG(model && dataset && alphas && options && out);
  return guarded([&] {
    const std::vector<double> a(alphas, alphas + alpha_count);
    *out = new srab_report{srab::evaluate_attack(
        model->model, dataset->dataset, a, to_eval(*options))};
  });
}

srab_status srab_transfer_matrix(const srab_model *const *models,
                                 size_t model_count,
                                 const srab_dataset *dataset, double alpha,
                                 const srab_eval_options *options,
                                 srab_report **out) {
  SRAB_REQUIRE_ARG(models && dataset && options && out);
  for (size_t i = 0; i < model_count; ++i)
    SRAB_REQUIRE_ARG(models[i]);
  return guarded([&] {
    std::vector<const srab::SRModel *> list;
    for (size_t i = 0; i < model_count; ++i)
      list.push_back(&models[i]->model);
    *out = new srab_report{srab::transfer_matrix(list, dataset->dataset, alpha,
                                                 to_eval(*options))};
  });
}

srab_status srab_robustness_sweep(const srab_model *model,
                                  const srab_dataset *dataset, double alpha,
                                  int samples,
                                  const srab_eval_options *options,
                                  srab_report **out) {
  SRAB_REQUIRE_ARG(model && dataset && options && out);
  return guarded([&] {
    *out = new srab_report{srab::robustness_sweep(
        model->model, dataset->dataset, alpha, samples, to_eval(*options))};
  });
}

srab_status srab_evaluate_defense(const srab_model *model,
                                  const srab_dataset *dataset, double alpha,
                                  srab_defense defense,
                                  const srab_eval_options *options,
                                  srab_report **out) {
  SRAB_REQUIRE_ARG(model && dataset && options && out);
  if (defense == SRAB_DEFENSE_NONE)
    return fail(SRAB_ERR_CONFIGURATION, "no defense selected");
  return guarded([&] {
    const auto method = defense == SRAB_DEFENSE_RESIZE
                            ? srab::DefenseMethod::Resize
                            : srab::DefenseMethod::Ensemble;
    *out = new srab_report{srab::evaluate_defense(
        model->model, dataset->dataset, alpha, method, to_eval(*options))};
  });
}

srab_status srab_report_create(const char *dataset, srab_attack_kind kind,
                               int iterations, uint64_t seed, int quantized,
                               srab_report **out) {
  SRAB_REQUIRE_ARG(dataset && out);
  return guarded([&] {
    srab::EvalReport r;
    r.created = srab::timestamp_from_environment();
    r.dataset = dataset;
    r.attack.kind = srab::to_string(to_kind(kind));
    r.attack.iterations = iterations;
    r.attack.seed = seed;
    r.attack.quantized = quantized != 0;
    *out = new srab_report{std::move(r)};
  });
}

srab_status srab_report_add_model(srab_report *report, const char *model) {
  SRAB_REQUIRE_ARG(report && model);
  return guarded([&] { report->report.models.emplace_back(model); });
}

srab_status srab_report_add_entry(srab_report *report,
                                  const srab_report_entry *entry) {
  SRAB_REQUIRE_ARG(report && entry && entry->image_id && entry->model);
  return guarded([&] {
    srab::ImageEntry e;
    e.image_id = entry->image_id;
    e.model = entry->model;
    e.alpha = entry->alpha;
    e.lr_psnr = entry->lr_psnr;
    e.sr_psnr = entry->sr_psnr;
    e.outer_psnr = from_nan(entry->outer_psnr);
    e.robustness_index = from_nan(entry->robustness_index);
    e.defended_sr_psnr = from_nan(entry->defended_sr_psnr);
    report->report.entries.push_back(std::move(e));
  });
}

srab_status srab_report_summarize(srab_report *report) {
  SRAB_REQUIRE_ARG(report);
  return guarded([&] { srab::summarize(report->report); });
}

size_t srab_report_entry_count(const srab_report *report) {
  return report ? report->report.entries.size() : 0;
}

srab_status srab_report_entry_at(const srab_report *report, size_t index,
                                 srab_report_entry *out) {
  SRAB_REQUIRE_ARG(report && out);
  SRAB_REQUIRE_ARG(index < report->report.entries.size());
  const srab::ImageEntry &e = report->report.entries[index];
  out->image_id = e.image_id.c_str();
  out->model = e.model.c_str();
  out->alpha = e.alpha;
  out->lr_psnr = e.lr_psnr;
  out->sr_psnr = e.sr_psnr;
  out->outer_psnr = to_nan(e.outer_psnr);
  out->robustness_index = to_nan(e.robustness_index);
  out->defended_sr_psnr = to_nan(e.defended_sr_psnr);
  return SRAB_OK;
}

int srab_report_spearman(const srab_report *report, double *out) {
  if (!report || !report->report.spearman)
    return 0;
  if (out)
    *out = *report->report.spearman;
  return 1;
}

srab_status srab_report_transfer_value(const srab_report *report,
                                       size_t source, size_t target,
                                       double *out) {
  SRAB_REQUIRE_ARG(report && out);
  const auto &t = report->report.transfer;
  if (!t)
    return fail(SRAB_ERR_DATA, "report has no transfer matrix");
  SRAB_REQUIRE_ARG(source < t->sources.size() && target < t->targets.size());
  *out = t->mean_sr_psnr[source][target];
  return SRAB_OK;
}

srab_status srab_report_serialize(const srab_report *report,
                                  srab_report_format format, char *buffer,
                                  size_t capacity, size_t *length) {
  SRAB_REQUIRE_ARG(report && length && (buffer || capacity == 0));
  return guarded([&] {
    std::string text;
    switch (format) {
    case SRAB_FORMAT_JSON:
      text = srab::report_to_json(report->report);
      break;
    case SRAB_FORMAT_CSV:
      text = srab::report_to_csv(report->report);
      break;
    case SRAB_FORMAT_TRANSFER_CSV:
      srab::require(report->report.transfer.has_value(), srab::ErrorKind::Data,
                    "report has no transfer matrix");
      text = srab::transfer_to_csv(*report->report.transfer);
      break;
    }
    *length = text.size();
    if (capacity > text.size())
      std::memcpy(buffer, text.c_str(), text.size() + 1);
  });
}

srab_status srab_report_write(const srab_report *report,
                              srab_report_format format, const char *path) {
  SRAB_REQUIRE_ARG(report && path);
  return guarded([&] {
    if (format == SRAB_FORMAT_TRANSFER_CSV) {
      srab::require(report->report.transfer.has_value(), srab::ErrorKind::Data,
                    "report has no transfer matrix");
      srab::write_text_file(path,
                            srab::transfer_to_csv(*report->report.transfer));
      return;
    }
    srab::emit_report(report->report,
                      format == SRAB_FORMAT_JSON ? srab::ReportFormat::Json
                                                 : srab::ReportFormat::Csv,
                      path);
  });
}

srab_status srab_report_parse_json(const char *text, srab_report **out) {
  SRAB_REQUIRE_ARG(text && out);
  return guarded(
      [&] { *out = new srab_report{srab::report_from_json(text)}; });
}

void srab_report_free(srab_report *report) { delete report; }

} // extern "C"
