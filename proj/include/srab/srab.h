/* SPDX-FileCopyrightText: (c) 2026 The srab authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to the srab toolkit. Every object is an opaque handle owned by
 * the caller and released with the matching *_free function. Functions that
 * can fail return srab_status; on failure srab_last_error() describes the
 * problem for the calling thread until its next failing call. */

#ifndef SRAB_SRAB_H
#define SRAB_SRAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SRAB_API __declspec(dllimport)
#elif defined(SRAB_BUILDING_LIBRARY)
#define SRAB_API __attribute__((visibility("default")))
#else
#define SRAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srab_status {
  SRAB_OK = 0,
  SRAB_ERR_CONFIGURATION = 1,
  SRAB_ERR_SHAPE_MISMATCH = 2,
  SRAB_ERR_BAD_MAGIC = 3,
  SRAB_ERR_VERSION_MISMATCH = 4,
  SRAB_ERR_FILE_SHAPE_MISMATCH = 5,
  SRAB_ERR_TRUNCATED_FILE = 6,
  SRAB_ERR_IO = 7,
  SRAB_ERR_UNSUPPORTED_BIT_DEPTH = 8,
  SRAB_ERR_UNSUPPORTED_FORMAT = 9,
  SRAB_ERR_EMPTY_REGION = 10,
  SRAB_ERR_DATA = 11,
  SRAB_ERR_INVALID_ARGUMENT = 12,
  SRAB_ERR_INTERNAL = 13
} srab_status;

typedef struct srab_image srab_image;
typedef struct srab_model srab_model;
typedef struct srab_dataset srab_dataset;
typedef struct srab_report srab_report;

SRAB_API const char *srab_version(void);
SRAB_API const char *srab_status_name(srab_status status);
SRAB_API const char *srab_last_error(void);

/* Images: planar (channels, height, width) doubles, nominally in [0, 1]. */
SRAB_API srab_status srab_image_create(int channels, int height, int width,
                                       const double *data, srab_image **out);
SRAB_API srab_status srab_image_load_png(const char *path, srab_image **out);
SRAB_API srab_status srab_image_save_png(const srab_image *image,
                                         const char *path);
SRAB_API srab_status srab_image_quantize(const srab_image *image,
                                         srab_image **out);
SRAB_API int srab_image_channels(const srab_image *image);
SRAB_API int srab_image_height(const srab_image *image);
SRAB_API int srab_image_width(const srab_image *image);
/* Copies channels*height*width values into `out`. */
SRAB_API srab_status srab_image_read(const srab_image *image, double *out,
                                     size_t count);
SRAB_API void srab_image_free(srab_image *image);

/* Models. Presets are "micro" (16 channels, 4 blocks) and "micro-large"
 * (32 channels, 8 blocks), both at scale 4. */
SRAB_API srab_status srab_model_bicubic(int scale, srab_model **out);
SRAB_API srab_status srab_model_micro(const char *preset, uint64_t seed,
                                      srab_model **out);
SRAB_API srab_status srab_model_load(const char *path, srab_model **out);
SRAB_API srab_status srab_model_save(const srab_model *model,
                                     const char *path);
/* Valid until the model is freed. */
SRAB_API const char *srab_model_name(const srab_model *model);
SRAB_API int srab_model_scale(const srab_model *model);
SRAB_API srab_status srab_model_forward(const srab_model *model,
                                        const srab_image *input,
                                        srab_image **out);
SRAB_API void srab_model_free(srab_model *model);

/* Datasets: PNG directories, HR center-cropped to multiples of the scale,
 * LR derived by bicubic downscaling and 8-bit rounding. */
SRAB_API srab_status srab_dataset_load_dir(const char *dir, int scale,
                                           srab_dataset **out);
/* Keeps images [first, first + count). */
SRAB_API srab_status srab_dataset_slice(const srab_dataset *dataset,
                                        size_t first, size_t count,
                                        srab_dataset **out);
SRAB_API size_t srab_dataset_size(const srab_dataset *dataset);
SRAB_API const char *srab_dataset_image_id(const srab_dataset *dataset,
                                           size_t index);
SRAB_API srab_status srab_dataset_lr(const srab_dataset *dataset, size_t index,
                                     srab_image **out);
SRAB_API srab_status srab_dataset_hr(const srab_dataset *dataset, size_t index,
                                     srab_image **out);
SRAB_API void srab_dataset_free(srab_dataset *dataset);

/* Training. */
typedef struct srab_train_options {
  int steps;
  int patch_size; /* HR side */
  int batch_size;
  double learning_rate;
  uint64_t seed;
  int augment;
} srab_train_options;

typedef void (*srab_progress_fn)(int step, double loss, void *user);

SRAB_API void srab_train_options_default(srab_train_options *options);
SRAB_API srab_status srab_train(const char *preset,
                                const srab_dataset *dataset,
                                const srab_train_options *options,
                                srab_progress_fn progress, void *user,
                                srab_model **out);

/* Attacks. */
typedef enum srab_attack_kind {
  SRAB_ATTACK_BASIC = 0,
  SRAB_ATTACK_PARTIAL = 1,
  SRAB_ATTACK_UNIVERSAL = 2,
  SRAB_ATTACK_TARGETED = 3
} srab_attack_kind;

typedef struct srab_attack_options {
  srab_attack_kind kind;
  double alpha;
  int iterations;
  uint64_t seed;
  /* Partial attacks: LR mask, channel 0 thresholded at 0.5; NULL selects
   * the center mask. */
  const srab_image *mask;
  /* Targeted attacks: LR target image. */
  const srab_image *target;
} srab_attack_options;

SRAB_API void srab_attack_options_default(srab_attack_options *options);
SRAB_API srab_status srab_attack_kind_parse(const char *text,
                                            srab_attack_kind *out);
/* Basic, partial or targeted attack on one LR image (not quantized). */
SRAB_API srab_status srab_attack_run(const srab_model *model,
                                     const srab_image *x0,
                                     const srab_attack_options *options,
                                     srab_image **adversarial);
/* Fits a universal perturbation on the center crops of `images` sized to
 * the smallest image. */
SRAB_API srab_status srab_universal_fit(const srab_model *model,
                                        const srab_image *const *images,
                                        size_t count,
                                        const srab_attack_options *options,
                                        srab_image **delta);
SRAB_API srab_status srab_universal_apply(const srab_image *image,
                                          const srab_image *delta,
                                          srab_image **out);
/* ||f(x) - f(reference)||_2 */
SRAB_API srab_status srab_attack_loss(const srab_model *model,
                                      const srab_image *x,
                                      const srab_image *reference,
                                      double *out);

/* Metrics. Identical images give +infinity. */
SRAB_API srab_status srab_psnr(const srab_image *a, const srab_image *b,
                               double *out);
/* PSNR outside the HR footprint of an LR mask (NULL: center mask). */
SRAB_API srab_status srab_outer_psnr(const srab_image *a, const srab_image *b,
                                     const srab_image *lr_mask, int scale,
                                     double *out);
SRAB_API srab_status srab_robustness_index(const srab_model *model,
                                           const srab_image *x0, double alpha,
                                           int samples, uint64_t seed,
                                           double *out);

/* Defenses. */
typedef enum srab_defense {
  SRAB_DEFENSE_NONE = 0,
  SRAB_DEFENSE_RESIZE = 1,
  SRAB_DEFENSE_ENSEMBLE = 2
} srab_defense;

SRAB_API srab_status srab_defense_parse(const char *text, srab_defense *out);
/* SR output under the defense, clipped to [0, 1]. */
SRAB_API srab_status srab_defended_forward(const srab_model *model,
                                           const srab_image *x,
                                           srab_defense defense,
                                           srab_image **out);

/* Evaluation. */
typedef struct srab_eval_options {
  srab_attack_kind kind;
  int iterations;
  uint64_t seed; /* image i uses seed + i */
  int quantize;
  int jobs;
  const srab_image *mask; /* partial attacks; NULL selects center masks */
} srab_eval_options;

typedef enum srab_report_format {
  SRAB_FORMAT_JSON = 0,
  SRAB_FORMAT_CSV = 1,
  SRAB_FORMAT_TRANSFER_CSV = 2
} srab_report_format;

/* Absent optional values are NaN. Strings live as long as the report. */
typedef struct srab_report_entry {
  const char *image_id;
  const char *model;
  double alpha;
  double lr_psnr;
  double sr_psnr;
  double outer_psnr;
  double robustness_index;
  double defended_sr_psnr;
} srab_report_entry;

SRAB_API void srab_eval_options_default(srab_eval_options *options);
SRAB_API srab_status srab_evaluate_attack(const srab_model *model,
                                          const srab_dataset *dataset,
                                          const double *alphas,
                                          size_t alpha_count,
                                          const srab_eval_options *options,
                                          srab_report **out);
SRAB_API srab_status srab_transfer_matrix(const srab_model *const *models,
                                          size_t model_count,
                                          const srab_dataset *dataset,
                                          double alpha,
                                          const srab_eval_options *options,
                                          srab_report **out);
SRAB_API srab_status srab_robustness_sweep(const srab_model *model,
                                           const srab_dataset *dataset,
                                           double alpha, int samples,
                                           const srab_eval_options *options,
                                           srab_report **out);
SRAB_API srab_status srab_evaluate_defense(const srab_model *model,
                                           const srab_dataset *dataset,
                                           double alpha, srab_defense defense,
                                           const srab_eval_options *options,
                                           srab_report **out);

/* Reports assembled by hand, e.g. for single-image attacks. */
SRAB_API srab_status srab_report_create(const char *dataset,
                                        srab_attack_kind kind, int iterations,
                                        uint64_t seed, int quantized,
                                        srab_report **out);
SRAB_API srab_status srab_report_add_model(srab_report *report,
                                           const char *model);
SRAB_API srab_status srab_report_add_entry(srab_report *report,
                                           const srab_report_entry *entry);
/* Recomputes the per-(model, alpha) means. */
SRAB_API srab_status srab_report_summarize(srab_report *report);

SRAB_API size_t srab_report_entry_count(const srab_report *report);
SRAB_API srab_status srab_report_entry_at(const srab_report *report,
                                          size_t index,
                                          srab_report_entry *out);
/* Returns 1 and stores the correlation when one is defined, else 0. */
SRAB_API int srab_report_spearman(const srab_report *report, double *out);
/* Mean SR-PSNR of target t on attacks crafted against source s. */
SRAB_API srab_status srab_report_transfer_value(const srab_report *report,
                                                size_t source, size_t target,
                                                double *out);
/* Serializes into `buffer` (may be NULL when capacity is 0). `length`
 * receives the full text length excluding the terminator; the output is
 * NUL-terminated whenever it fits. */
SRAB_API srab_status srab_report_serialize(const srab_report *report,
                                           srab_report_format format,
                                           char *buffer, size_t capacity,
                                           size_t *length);
SRAB_API srab_status srab_report_write(const srab_report *report,
                                       srab_report_format format,
                                       const char *path);
SRAB_API srab_status srab_report_parse_json(const char *text,
                                            srab_report **out);
SRAB_API void srab_report_free(srab_report *report);

#ifdef __cplusplus
}
#endif

#endif /* SRAB_SRAB_H */
