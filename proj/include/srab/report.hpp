// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace srab {

inline constexpr const char *kReportSchema = "srab-report/1";
inline constexpr const char *kToolkitVersion = "1.0.0";

/// One (image, model, alpha) measurement. PSNR values may be +infinity.
struct ImageEntry {
  std::string image_id;
  std::string model;
  double alpha = 0.0;
  double lr_psnr = 0.0;
  double sr_psnr = 0.0;
  std::optional<double> outer_psnr;
  std::optional<double> robustness_index;
  std::optional<double> defended_sr_psnr;

  friend bool operator==(const ImageEntry &, const ImageEntry &) = default;
};

struct SummaryRow {
  std::string model;
  double alpha = 0.0;
  int count = 0;
  double mean_lr_psnr = 0.0;
  double mean_sr_psnr = 0.0;
  std::optional<double> mean_outer_psnr;
  std::optional<double> mean_defended_sr_psnr;

  friend bool operator==(const SummaryRow &, const SummaryRow &) = default;
};

/// mean_sr_psnr[s][t]: target model t fed examples crafted against source s.
struct TransferMatrix {
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  std::vector<std::vector<double>> mean_sr_psnr;

  friend bool operator==(const TransferMatrix &,
                         const TransferMatrix &) = default;
};

struct AttackSettings {
  std::string kind; // basic | partial | universal | targeted
  int iterations = 50;
  std::uint64_t seed = 0;
  bool quantized = true;
  std::optional<std::string> defense; // resize | ensemble

  friend bool operator==(const AttackSettings &,
                         const AttackSettings &) = default;
};

struct EvalReport {
  std::string schema = kReportSchema;
  std::string toolkit_version = kToolkitVersion;
  /// Seconds since the epoch, taken from SOURCE_DATE_EPOCH when set so that
  /// reruns stay byte-identical.
  std::optional<std::int64_t> created;
  std::string dataset;
  std::vector<std::string> models;
  AttackSettings attack;
  std::vector<ImageEntry> entries;
  std::vector<SummaryRow> summary;
  std::optional<TransferMatrix> transfer;
  /// Spearman correlation of robustness index against SR PSNR; empty when
  /// undefined (flagged in the JSON).
  std::optional<double> spearman;
  bool spearman_requested = false;

  friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

/// Recomputes `summary` as per-(model, alpha) arithmetic means of entries,
/// in first-appearance order.
void summarize(EvalReport &report);

std::optional<std::int64_t> timestamp_from_environment();

std::string report_to_json(const EvalReport &report);
EvalReport report_from_json(const std::string &text);

/// Header: image_id,alpha,lr_psnr,sr_psnr,outer_psnr,robustness_index,
/// defended_sr_psnr,model. Infinite PSNR is written as "inf", absent
/// values as empty cells.
std::string report_to_csv(const EvalReport &report);

/// Header: source,<target names...>; one row per source model.
std::string transfer_to_csv(const TransferMatrix &matrix);

enum class ReportFormat { Json, Csv };

/// Writes JSON or per-image CSV. Throws Data for a report without entries.
void emit_report(const EvalReport &report, ReportFormat format,
                 const std::filesystem::path &path);

/// Throws Io when the file cannot be written.
void write_text_file(const std::filesystem::path &path, const std::string &text);

/// Decimal text that reads back to the same double.
std::string format_double(double v);

} // namespace srab
