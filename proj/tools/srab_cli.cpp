// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srab/srab.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Failure {
  int code;
  std::string message;
};

struct ImageDeleter {
  void operator()(srab_image *p) const { srab_image_free(p); }
};
struct ModelDeleter {
  void operator()(srab_model *p) const { srab_model_free(p); }
};
struct DatasetDeleter {
  void operator()(srab_dataset *p) const { srab_dataset_free(p); }
};
struct ReportDeleter {
  void operator()(srab_report *p) const { srab_report_free(p); }
};
using Image = std::unique_ptr<srab_image, ImageDeleter>;
using Model = std::unique_ptr<srab_model, ModelDeleter>;
using DatasetHandle = std::unique_ptr<srab_dataset, DatasetDeleter>;
using Report = std::unique_ptr<srab_report, ReportDeleter>;

void check(srab_status status) {
  if (status == SRAB_OK)
    return;
  const int code = status == SRAB_ERR_CONFIGURATION ||
                           status == SRAB_ERR_INVALID_ARGUMENT
                       ? kExitUsage
                       : kExitData;
  throw Failure{code, srab_last_error()};
}

[[noreturn]] void usage_error(const std::string &message) {
  throw Failure{kExitUsage, message};
}

// "k/255" or a plain number on the [0, 1] scale.
double parse_alpha(const std::string &text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size())
        throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double n = std::stod(num, &used);
    if (used != num.size())
      throw std::invalid_argument(text);
    const double d = std::stod(den, &used);
    if (used != den.size() || d == 0.0)
      throw std::invalid_argument(text);
    return n / d;
  } catch (const std::logic_error &) {
    usage_error("cannot parse alpha '" + text + "' (use k/255 or a number)");
  }
}

// Bare numbers in a sweep list count in 1/255 steps.
std::vector<double> parse_alpha_list(const std::string &text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty())
      usage_error("empty entry in alpha list '" + text + "'");
    out.push_back(item.find('/') == std::string::npos
                      ? parse_alpha(item) / 255.0
                      : parse_alpha(item));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

fs::path cache_dir() {
  const char *dir = std::getenv("SRAB_CACHE");
  if (!dir || !*dir)
    return {};
  return dir;
}

// "bicubic", a preset name resolved in $SRAB_CACHE, or a weight file path.
Model load_model(const std::string &spec) {
  srab_model *raw = nullptr;
  if (spec == "bicubic") {
    check(srab_model_bicubic(4, &raw));
    return Model(raw);
  }
  if (spec == "micro" || spec == "micro-large") {
    const fs::path cache = cache_dir();
    if (cache.empty())
      throw Failure{kExitData, "preset '" + spec +
                                   "' needs SRAB_CACHE to point at trained "
                                   "weights (see `srab train`)"};
    const fs::path file = cache / (spec + ".sraw");
    if (!fs::exists(file))
      throw Failure{kExitData, "no cached weights at " + file.string() +
                                   "; run `srab train --preset " + spec + "`"};
    check(srab_model_load(file.c_str(), &raw));
    return Model(raw);
  }
  check(srab_model_load(spec.c_str(), &raw));
  return Model(raw);
}

Image load_image(const std::string &path) {
  srab_image *raw = nullptr;
  check(srab_image_load_png(path.c_str(), &raw));
  return Image(raw);
}

DatasetHandle load_dataset(const std::string &dir) {
  srab_dataset *raw = nullptr;
  check(srab_dataset_load_dir(dir.c_str(), 4, &raw));
  return DatasetHandle(raw);
}

Image forward(const srab_model *model, const srab_image *x) {
  srab_image *raw = nullptr;
  check(srab_defended_forward(model, x, SRAB_DEFENSE_NONE, &raw));
  return Image(raw);
}

void save(const srab_image *image, const fs::path &path) {
  check(srab_image_save_png(image, path.c_str()));
}

srab_report_format format_for(const std::string &path,
                              const std::string &format) {
  if (format == "json")
    return SRAB_FORMAT_JSON;
  if (format == "csv")
    return SRAB_FORMAT_CSV;
  return fs::path(path).extension() == ".json" ? SRAB_FORMAT_JSON
                                               : SRAB_FORMAT_CSV;
}

void write_report(const srab_report *report, const std::string &path,
                  const std::string &format) {
  if (path.empty() || path == "-") {
    const srab_report_format f =
        format == "json" ? SRAB_FORMAT_JSON : SRAB_FORMAT_CSV;
    size_t length = 0;
    check(srab_report_serialize(report, f, nullptr, 0, &length));
    std::string text(length + 1, '\0');
    check(srab_report_serialize(report, f, text.data(), text.size(), &length));
    text.resize(length);
    std::fputs(text.c_str(), stdout);
    return;
  }
  check(srab_report_write(report, format_for(path, format), path.c_str()));
}

std::string psnr_text(double v) {
  if (std::isinf(v))
    return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Shared flag groups.

struct EvalFlags {
  std::string weights;
  std::string data;
  std::uint64_t seed = 0;
  int iters = 50;
  int jobs = 1;
  bool float_inputs = false;
  std::string out;
  std::string format = "auto";
};

void add_eval_flags(CLI::App *cmd, EvalFlags &f, bool weights_flag = true) {
  if (weights_flag)
    cmd->add_option("-w,--weights", f.weights,
                    "Weight file, preset (micro, micro-large) or 'bicubic'")
        ->required();
  cmd->add_option("-d,--data", f.data, "Directory of HR PNG images")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--iters", f.iters, "Attack iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("-j,--jobs", f.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--float", f.float_inputs,
                "Measure unquantized adversarial inputs");
  cmd->add_option("-o,--out", f.out, "Report path ('-' for stdout)")
      ->capture_default_str();
  cmd->add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
}

srab_eval_options eval_options(const EvalFlags &f) {
  srab_eval_options o;
  srab_eval_options_default(&o);
  o.seed = f.seed;
  o.iterations = f.iters;
  o.jobs = f.jobs;
  o.quantize = f.float_inputs ? 0 : 1;
  return o;
}

// train

struct TrainFlags {
  std::string data;
  std::string preset = "micro";
  int steps = 2000;
  int patch = 96;
  int batch = 8;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::string out;
  bool quiet = false;
};

void progress(int step, double loss, void *user) {
  const auto *flags = static_cast<const TrainFlags *>(user);
  if (!flags->quiet && (step + 1) % 100 == 0)
    std::fprintf(stderr, "step %d/%d  loss %.6f\n", step + 1, flags->steps,
                 loss);
}

int run_train(TrainFlags &f) {
  fs::path out = f.out;
  if (out.empty()) {
    const fs::path cache = cache_dir();
    if (cache.empty())
      usage_error("--out is required unless SRAB_CACHE is set");
    fs::create_directories(cache);
    out = cache / (f.preset + ".sraw");
  }
  DatasetHandle data = load_dataset(f.data);
  srab_train_options o;
  srab_train_options_default(&o);
  o.steps = f.steps;
  o.patch_size = f.patch;
  o.batch_size = f.batch;
  o.learning_rate = f.lr;
  o.seed = f.seed;
  srab_model *raw = nullptr;
  check(srab_train(f.preset.c_str(), data.get(), &o, progress, &f, &raw));
  Model model(raw);
  check(srab_model_save(model.get(), out.c_str()));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

// attack

struct AttackFlags {
  std::string weights;
  std::vector<std::string> images;
  std::string kind = "basic";
  std::string alpha = "8/255";
  int iters = 50;
  std::uint64_t seed = 0;
  std::string mask = "center";
  std::string target;
  std::string out_dir = ".";
  bool float_inputs = false;
};

int run_attack(const AttackFlags &f) {
  srab_attack_options o;
  srab_attack_options_default(&o);
  check(srab_attack_kind_parse(f.kind.c_str(), &o.kind));
  o.alpha = parse_alpha(f.alpha);
  o.iterations = f.iters;
  o.seed = f.seed;

  if (o.kind == SRAB_ATTACK_TARGETED && f.target.empty())
    usage_error("--kind targeted needs --target");
  if (o.kind != SRAB_ATTACK_TARGETED && !f.target.empty())
    usage_error("--target only applies to --kind targeted");
  if (o.kind != SRAB_ATTACK_PARTIAL && f.mask != "center")
    usage_error("--mask only applies to --kind partial");

  Model model = load_model(f.weights);
  Image mask;
  if (o.kind == SRAB_ATTACK_PARTIAL && f.mask != "center") {
    mask = load_image(f.mask);
    o.mask = mask.get();
  }
  Image target;
  if (!f.target.empty()) {
    target = load_image(f.target);
    o.target = target.get();
  }

  std::vector<Image> inputs;
  for (const std::string &path : f.images)
    inputs.push_back(load_image(path));

  std::vector<Image> adversarial;
  if (o.kind == SRAB_ATTACK_UNIVERSAL) {
    std::vector<const srab_image *> views;
    for (const Image &img : inputs)
      views.push_back(img.get());
    srab_image *delta = nullptr;
    check(srab_universal_fit(model.get(), views.data(), views.size(), &o,
                             &delta));
    Image d(delta);
    for (const Image &img : inputs) {
      srab_image *adv = nullptr;
      check(srab_universal_apply(img.get(), d.get(), &adv));
      adversarial.emplace_back(adv);
    }
  } else {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      srab_attack_options per = o;
      per.seed = o.seed + i;
      srab_image *adv = nullptr;
      check(srab_attack_run(model.get(), inputs[i].get(), &per, &adv));
      adversarial.emplace_back(adv);
    }
  }

  fs::create_directories(f.out_dir);
  srab_report *raw_report = nullptr;
  check(srab_report_create("cli", o.kind, o.iterations, o.seed,
                           f.float_inputs ? 0 : 1, &raw_report));
  Report report(raw_report);
  check(srab_report_add_model(report.get(), srab_model_name(model.get())));

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string stem = fs::path(f.images[i]).stem().string();
    Image measured;
    if (f.float_inputs) {
      measured = std::move(adversarial[i]);
    } else {
      srab_image *q = nullptr;
      check(srab_image_quantize(adversarial[i].get(), &q));
      measured.reset(q);
    }
    const fs::path dir = f.out_dir;
    save(measured.get(), dir / (stem + "_adv.png"));
    Image clean_sr = forward(model.get(), inputs[i].get());
    Image adv_sr = forward(model.get(), measured.get());
    save(clean_sr.get(), dir / (stem + "_sr_clean.png"));
    save(adv_sr.get(), dir / (stem + "_sr_adv.png"));

    srab_report_entry e{};
    e.image_id = stem.c_str();
    e.model = srab_model_name(model.get());
    e.alpha = o.alpha;
    check(srab_psnr(inputs[i].get(), measured.get(), &e.lr_psnr));
    check(srab_psnr(clean_sr.get(), adv_sr.get(), &e.sr_psnr));
    e.outer_psnr = NAN;
    e.robustness_index = NAN;
    e.defended_sr_psnr = NAN;
    if (o.kind == SRAB_ATTACK_PARTIAL)
      check(srab_outer_psnr(clean_sr.get(), adv_sr.get(), o.mask,
                            srab_model_scale(model.get()), &e.outer_psnr));
    check(srab_report_add_entry(report.get(), &e));
    std::printf("%s  LR-PSNR %s dB  SR-PSNR %s dB", stem.c_str(),
                psnr_text(e.lr_psnr).c_str(), psnr_text(e.sr_psnr).c_str());
    if (o.kind == SRAB_ATTACK_PARTIAL)
      std::printf("  outer SR-PSNR %s dB", psnr_text(e.outer_psnr).c_str());
    if (o.kind == SRAB_ATTACK_TARGETED) {
      double before = 0.0, after = 0.0;
      check(srab_attack_loss(model.get(), inputs[i].get(), target.get(),
                             &before));
      check(srab_attack_loss(model.get(), measured.get(), target.get(),
                             &after));
      std::printf("  target distance %.4f -> %.4f", before, after);
    }
    std::printf("\n");
  }
  check(srab_report_summarize(report.get()));
  const fs::path json = fs::path(f.out_dir) / "attack.json";
  check(srab_report_write(report.get(), SRAB_FORMAT_JSON, json.c_str()));
  return 0;
}

// evaluate

struct EvaluateFlags : EvalFlags {
  std::string alphas = "1,2,4,8,16,32";
  std::string kind = "basic";
  std::string mask = "center";
};

int run_evaluate(const EvaluateFlags &f) {
  srab_eval_options o = eval_options(f);
  check(srab_attack_kind_parse(f.kind.c_str(), &o.kind));
  if (o.kind == SRAB_ATTACK_TARGETED)
    usage_error("evaluate does not sweep targeted attacks; use `attack`");
  const std::vector<double> alphas = parse_alpha_list(f.alphas);
  Model model = load_model(f.weights);
  DatasetHandle data = load_dataset(f.data);
  Image mask;
  if (f.mask != "center") {
    if (o.kind != SRAB_ATTACK_PARTIAL)
      usage_error("--mask only applies to --kind partial");
    mask = load_image(f.mask);
    o.mask = mask.get();
  }
  srab_report *raw = nullptr;
  check(srab_evaluate_attack(model.get(), data.get(), alphas.data(),
                             alphas.size(), &o, &raw));
  Report report(raw);
  write_report(report.get(), f.out, f.format);
  return 0;
}

// robustness

struct RobustnessFlags : EvalFlags {
  std::string alpha = "1/255";
  int samples = 1024;
};

int run_robustness(const RobustnessFlags &f) {
  const srab_eval_options o = eval_options(f);
  Model model = load_model(f.weights);
  DatasetHandle data = load_dataset(f.data);
  srab_report *raw = nullptr;
  check(srab_robustness_sweep(model.get(), data.get(), parse_alpha(f.alpha),
                              f.samples, &o, &raw));
  Report report(raw);
  write_report(report.get(), f.out, f.format);
  double rho = 0.0;
  if (srab_report_spearman(report.get(), &rho))
    std::fprintf(stderr, "spearman(robustness index, SR-PSNR) = %.4f\n", rho);
  else
    std::fprintf(stderr, "spearman(robustness index, SR-PSNR) undefined\n");
  return 0;
}

// defend

struct DefendFlags : EvalFlags {
  std::string alpha = "8/255";
  std::string method = "resize";
};

int run_defend(const DefendFlags &f) {
  const srab_eval_options o = eval_options(f);
  srab_defense method;
  check(srab_defense_parse(f.method.c_str(), &method));
  Model model = load_model(f.weights);
  DatasetHandle data = load_dataset(f.data);
  srab_report *raw = nullptr;
  check(srab_evaluate_defense(model.get(), data.get(), parse_alpha(f.alpha),
                              method, &o, &raw));
  Report report(raw);
  write_report(report.get(), f.out, f.format);
  return 0;
}

// transfer

struct TransferFlags : EvalFlags {
  std::vector<std::string> models;
  std::string alpha = "8/255";
  std::string json;
};

int run_transfer(const TransferFlags &f) {
  const srab_eval_options o = eval_options(f);
  std::vector<Model> models;
  std::vector<const srab_model *> views;
  for (const std::string &spec : f.models) {
    models.push_back(load_model(spec));
    views.push_back(models.back().get());
  }
  DatasetHandle data = load_dataset(f.data);
  srab_report *raw = nullptr;
  check(srab_transfer_matrix(views.data(), views.size(), data.get(),
                             parse_alpha(f.alpha), &o, &raw));
  Report report(raw);
  if (f.out.empty() || f.out == "-") {
    size_t length = 0;
    check(srab_report_serialize(report.get(), SRAB_FORMAT_TRANSFER_CSV,
                                nullptr, 0, &length));
    std::string text(length + 1, '\0');
    check(srab_report_serialize(report.get(), SRAB_FORMAT_TRANSFER_CSV,
                                text.data(), text.size(), &length));
    text.resize(length);
    std::fputs(text.c_str(), stdout);
  } else {
    check(srab_report_write(report.get(), SRAB_FORMAT_TRANSFER_CSV,
                            f.out.c_str()));
  }
  if (!f.json.empty())
    check(srab_report_write(report.get(), SRAB_FORMAT_JSON, f.json.c_str()));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Adversarial robustness benchmark for super-resolution models",
               "srab"};
  app.set_version_flag("--version", std::string(srab_version()));
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  TrainFlags train;
  auto *train_cmd = app.add_subcommand("train", "Train a micro EDSR preset");
  train_cmd->add_option("-d,--data", train.data, "Directory of HR PNG images")
      ->required()
      ->check(CLI::ExistingDirectory);
  train_cmd->add_option("-p,--preset", train.preset, "Model preset")
      ->check(CLI::IsMember({"micro", "micro-large"}))
      ->capture_default_str();
  train_cmd->add_option("--steps", train.steps, "Optimizer steps")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--patch", train.patch, "HR patch side")
      ->capture_default_str();
  train_cmd->add_option("--batch", train.batch, "Patches per step")
      ->capture_default_str();
  train_cmd->add_option("--lr", train.lr, "Adam learning rate")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Random seed")
      ->capture_default_str();
  train_cmd->add_option("-o,--out", train.out,
                        "Weight file (default $SRAB_CACHE/<preset>.sraw)");
  train_cmd->add_flag("-q,--quiet", train.quiet, "No progress output");

  AttackFlags attack;
  auto *attack_cmd =
      app.add_subcommand("attack", "Attack LR images and write PNG results");
  attack_cmd
      ->add_option("-w,--weights", attack.weights,
                   "Weight file, preset (micro, micro-large) or 'bicubic'")
      ->required();
  attack_cmd->add_option("images", attack.images, "LR input PNGs")
      ->required()
      ->check(CLI::ExistingFile);
  attack_cmd->add_option("-k,--kind", attack.kind, "Attack kind")
      ->check(CLI::IsMember({"basic", "universal", "partial", "targeted"}))
      ->capture_default_str();
  attack_cmd->add_option("-a,--alpha", attack.alpha, "Budget, k/255 or float")
      ->capture_default_str();
  attack_cmd->add_option("--iters", attack.iters, "Iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--seed", attack.seed, "Random seed")
      ->capture_default_str();
  attack_cmd->add_option("--mask", attack.mask, "'center' or a mask PNG")
      ->capture_default_str();
  attack_cmd->add_option("--target", attack.target, "Target LR PNG")
      ->check(CLI::ExistingFile);
  attack_cmd->add_option("-o,--out-dir", attack.out_dir, "Output directory")
      ->capture_default_str();
  attack_cmd->add_flag("--float", attack.float_inputs,
                       "Skip 8-bit rounding of the attacked image");

  EvaluateFlags evaluate;
  auto *evaluate_cmd =
      app.add_subcommand("evaluate", "Sweep attack budgets over a dataset");
  add_eval_flags(evaluate_cmd, evaluate);
  evaluate_cmd
      ->add_option("--alphas", evaluate.alphas,
                   "Comma-separated budgets; bare numbers are k/255")
      ->capture_default_str();
  evaluate_cmd->add_option("-k,--kind", evaluate.kind, "Attack kind")
      ->check(CLI::IsMember({"basic", "universal", "partial"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--mask", evaluate.mask, "'center' or a mask PNG")
      ->capture_default_str();

  RobustnessFlags robustness;
  auto *robustness_cmd = app.add_subcommand(
      "robustness", "Robustness index against attacked SR-PSNR per image");
  add_eval_flags(robustness_cmd, robustness);
  robustness_cmd->add_option("-a,--alpha", robustness.alpha, "Budget")
      ->capture_default_str();
  robustness_cmd->add_option("--samples", robustness.samples, "Samples per image")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  DefendFlags defend;
  auto *defend_cmd =
      app.add_subcommand("defend", "Attacked SR-PSNR with and without a defense");
  add_eval_flags(defend_cmd, defend);
  defend_cmd->add_option("-a,--alpha", defend.alpha, "Budget")
      ->capture_default_str();
  defend_cmd->add_option("-m,--method", defend.method, "Defense")
      ->check(CLI::IsMember({"resize", "ensemble"}))
      ->capture_default_str();

  TransferFlags transfer;
  auto *transfer_cmd = app.add_subcommand(
      "transfer", "Source x target SR-PSNR matrix of basic attacks");
  add_eval_flags(transfer_cmd, transfer, false);
  transfer_cmd->add_option("-w,--weights", transfer.models, "Models (>= 2)")
      ->required()
      ->expected(2, -1);
  transfer_cmd->add_option("-a,--alpha", transfer.alpha, "Budget")
      ->capture_default_str();
  transfer_cmd->add_option("--json", transfer.json, "Also write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*train_cmd)
      return run_train(train);
    if (*attack_cmd)
      return run_attack(attack);
    if (*evaluate_cmd)
      return run_evaluate(evaluate);
    if (*robustness_cmd)
      return run_robustness(robustness);
    if (*defend_cmd)
      return run_defend(defend);
    if (*transfer_cmd)
      return run_transfer(transfer);
  } catch (const Failure &f) {
    std::fprintf(stderr, "srab: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "srab: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
