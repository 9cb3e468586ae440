// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "srab/srab.h"
#include "test_util.hpp"

namespace {

using srab::testing::TempDir;

std::vector<double> ramp(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = static_cast<double>(i % 256) / 255.0;
  return v;
}

srab_image *make_image(int c, int h, int w) {
  const std::vector<double> data = ramp(c * h * w);
  srab_image *img = nullptr;
  EXPECT_EQ(srab_image_create(c, h, w, data.data(), &img), SRAB_OK);
  return img;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(srab_version(), "1.0.0");
  EXPECT_STREQ(srab_status_name(SRAB_OK), "ok");
  EXPECT_NE(std::string(srab_status_name(SRAB_ERR_TRUNCATED_FILE)), "");
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(srab_image_create(3, 2, 2, nullptr, nullptr),
            SRAB_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(srab_last_error()), "");
  EXPECT_EQ(srab_model_forward(nullptr, nullptr, nullptr),
            SRAB_ERR_INVALID_ARGUMENT);
  srab_image_free(nullptr);
  srab_model_free(nullptr);
  srab_dataset_free(nullptr);
  srab_report_free(nullptr);
}

TEST(CApi, ImageRoundTrip) {
  srab_image *img = make_image(3, 4, 5);
  EXPECT_EQ(srab_image_channels(img), 3);
  EXPECT_EQ(srab_image_height(img), 4);
  EXPECT_EQ(srab_image_width(img), 5);
  std::vector<double> out(60);
  ASSERT_EQ(srab_image_read(img, out.data(), out.size()), SRAB_OK);
  EXPECT_EQ(out, ramp(60));
  EXPECT_EQ(srab_image_read(img, out.data(), 59), SRAB_ERR_SHAPE_MISMATCH);

  TempDir dir;
  const std::string path = (dir / "x.png").string();
  ASSERT_EQ(srab_image_save_png(img, path.c_str()), SRAB_OK);
  srab_image *back = nullptr;
  ASSERT_EQ(srab_image_load_png(path.c_str(), &back), SRAB_OK);
  std::vector<double> loaded(60);
  srab_image_read(back, loaded.data(), loaded.size());
  EXPECT_EQ(loaded, out);
  srab_image_free(back);
  srab_image_free(img);

  EXPECT_EQ(srab_image_load_png((dir / "none.png").string().c_str(), &back),
            SRAB_ERR_IO);
}

TEST(CApi, ModelsAndWeights) {
  srab_model *bic = nullptr;
  ASSERT_EQ(srab_model_bicubic(4, &bic), SRAB_OK);
  EXPECT_STREQ(srab_model_name(bic), "bicubic");
  EXPECT_EQ(srab_model_scale(bic), 4);

  srab_model *micro = nullptr;
  EXPECT_EQ(srab_model_micro("huge", 0, &micro), SRAB_ERR_CONFIGURATION);
  ASSERT_EQ(srab_model_micro("micro", 3, &micro), SRAB_OK);
  srab_image *x = make_image(3, 4, 4);
  srab_image *y = nullptr;
  ASSERT_EQ(srab_model_forward(micro, x, &y), SRAB_OK);
  EXPECT_EQ(srab_image_height(y), 16);

  TempDir dir;
  const std::string path = (dir / "m.sraw").string();
  ASSERT_EQ(srab_model_save(micro, path.c_str()), SRAB_OK);
  srab_model *loaded = nullptr;
  ASSERT_EQ(srab_model_load(path.c_str(), &loaded), SRAB_OK);
  srab_image *y2 = nullptr;
  ASSERT_EQ(srab_model_forward(loaded, x, &y2), SRAB_OK);
  double d = 0.0;
  ASSERT_EQ(srab_psnr(y, y2, &d), SRAB_OK);
  EXPECT_TRUE(std::isinf(d));

  EXPECT_EQ(srab_model_load((dir / "none").string().c_str(), &loaded),
            SRAB_ERR_IO);
  for (srab_image *i : {x, y, y2})
    srab_image_free(i);
  for (srab_model *m : {bic, micro, loaded})
    srab_model_free(m);
}

TEST(CApi, AttackAndMetrics) {
  srab_model *bic = nullptr;
  srab_model_bicubic(4, &bic);
  srab_image *x = make_image(3, 8, 8);
  srab_attack_options o;
  srab_attack_options_default(&o);
  EXPECT_EQ(o.kind, SRAB_ATTACK_BASIC);
  EXPECT_EQ(o.iterations, 50);
  o.alpha = 4.0 / 255.0;
  o.iterations = 4;

  srab_image *adv = nullptr;
  ASSERT_EQ(srab_attack_run(bic, x, &o, &adv), SRAB_OK);
  double loss = 0.0;
  ASSERT_EQ(srab_attack_loss(bic, adv, x, &loss), SRAB_OK);
  EXPECT_GT(loss, 0.0);

  o.kind = SRAB_ATTACK_PARTIAL;
  srab_image *partial = nullptr;
  ASSERT_EQ(srab_attack_run(bic, x, &o, &partial), SRAB_OK);
  srab_image *sr_x = nullptr, *sr_p = nullptr;
  srab_model_forward(bic, x, &sr_x);
  srab_model_forward(bic, partial, &sr_p);
  double outer = 0.0, full = 0.0;
  ASSERT_EQ(srab_outer_psnr(sr_x, sr_p, nullptr, 4, &outer), SRAB_OK);
  ASSERT_EQ(srab_psnr(sr_x, sr_p, &full), SRAB_OK);
  EXPECT_GT(outer, full);

  o.kind = SRAB_ATTACK_TARGETED;
  srab_image *t = nullptr;
  EXPECT_EQ(srab_attack_run(bic, x, &o, &t), SRAB_ERR_CONFIGURATION);
  o.target = x;
  ASSERT_EQ(srab_attack_run(bic, x, &o, &t), SRAB_OK);

  o.kind = SRAB_ATTACK_UNIVERSAL;
  srab_image *u = nullptr;
  EXPECT_EQ(srab_attack_run(bic, x, &o, &u), SRAB_ERR_CONFIGURATION);
  const srab_image *batch[] = {x, adv};
  srab_image *delta = nullptr;
  ASSERT_EQ(srab_universal_fit(bic, batch, 2, &o, &delta), SRAB_OK);
  ASSERT_EQ(srab_universal_apply(x, delta, &u), SRAB_OK);

  double index = 0.0;
  ASSERT_EQ(srab_robustness_index(bic, x, 1.0 / 255.0, 4, 0, &index), SRAB_OK);
  EXPECT_GT(index, 0.0);

  srab_defense def;
  EXPECT_EQ(srab_defense_parse("ensemble", &def), SRAB_OK);
  EXPECT_EQ(def, SRAB_DEFENSE_ENSEMBLE);
  EXPECT_EQ(srab_defense_parse("wall", &def), SRAB_ERR_CONFIGURATION);
  srab_attack_kind kind;
  EXPECT_EQ(srab_attack_kind_parse("partial", &kind), SRAB_OK);
  EXPECT_EQ(kind, SRAB_ATTACK_PARTIAL);
  srab_image *defended = nullptr;
  ASSERT_EQ(srab_defended_forward(bic, x, SRAB_DEFENSE_RESIZE, &defended),
            SRAB_OK);

  o.alpha = 2.0;
  EXPECT_EQ(srab_attack_run(bic, x, &o, &adv), SRAB_ERR_CONFIGURATION);

  for (srab_image *i : {x, adv, partial, sr_x, sr_p, t, delta, u, defended})
    srab_image_free(i);
  srab_model_free(bic);
}

TEST(CApi, DatasetEvaluationAndReports) {
  srab_dataset *ds = nullptr;
  EXPECT_EQ(srab_dataset_load_dir("/nonexistent/dir", 4, &ds), SRAB_ERR_IO);
  ASSERT_EQ(srab_dataset_load_dir(
                srab::testing::fixture_dir("eval").string().c_str(), 4, &ds),
            SRAB_OK);
  EXPECT_EQ(srab_dataset_size(ds), 24u);
  srab_dataset *two = nullptr;
  ASSERT_EQ(srab_dataset_slice(ds, 0, 2, &two), SRAB_OK);
  EXPECT_EQ(srab_dataset_slice(ds, 20, 5, &two), SRAB_ERR_CONFIGURATION);
  EXPECT_STREQ(srab_dataset_image_id(two, 0), srab_dataset_image_id(ds, 0));
  EXPECT_EQ(srab_dataset_image_id(two, 9), nullptr);

  srab_model *bic = nullptr;
  srab_model_bicubic(4, &bic);
  srab_eval_options eo;
  srab_eval_options_default(&eo);
  EXPECT_EQ(eo.quantize, 1);
  eo.iterations = 2;
  const double alphas[] = {0.0, 4.0 / 255.0};
  srab_report *rep = nullptr;
  ASSERT_EQ(srab_evaluate_attack(bic, two, alphas, 2, &eo, &rep), SRAB_OK);
  ASSERT_EQ(srab_report_entry_count(rep), 4u);
  srab_report_entry e;
  ASSERT_EQ(srab_report_entry_at(rep, 0, &e), SRAB_OK);
  EXPECT_TRUE(std::isinf(e.sr_psnr));
  EXPECT_TRUE(std::isnan(e.outer_psnr));
  EXPECT_EQ(srab_report_entry_at(rep, 4, &e), SRAB_ERR_INVALID_ARGUMENT);
  double rho = 0.0;
  EXPECT_EQ(srab_report_spearman(rep, &rho), 0);

  size_t len = 0;
  ASSERT_EQ(srab_report_serialize(rep, SRAB_FORMAT_JSON, nullptr, 0, &len),
            SRAB_OK);
  std::string json(len + 1, '\0');
  ASSERT_EQ(srab_report_serialize(rep, SRAB_FORMAT_JSON, json.data(),
                                  json.size(), &len),
            SRAB_OK);
  json.resize(len);
  srab_report *parsed = nullptr;
  ASSERT_EQ(srab_report_parse_json(json.c_str(), &parsed), SRAB_OK);
  EXPECT_EQ(srab_report_entry_count(parsed), 4u);
  EXPECT_EQ(srab_report_parse_json("[]", &parsed), SRAB_ERR_DATA);
  EXPECT_EQ(srab_report_serialize(rep, SRAB_FORMAT_TRANSFER_CSV, nullptr, 0,
                                  &len),
            SRAB_ERR_DATA);

  const srab_model *models[] = {bic, bic};
  srab_report *transfer = nullptr;
  ASSERT_EQ(srab_transfer_matrix(models, 2, two, 4.0 / 255.0, &eo, &transfer),
            SRAB_OK);
  double v01 = 0.0, v10 = 0.0;
  ASSERT_EQ(srab_report_transfer_value(transfer, 0, 1, &v01), SRAB_OK);
  ASSERT_EQ(srab_report_transfer_value(transfer, 1, 0, &v10), SRAB_OK);
  EXPECT_EQ(v01, v10);
  EXPECT_EQ(srab_report_transfer_value(transfer, 2, 0, &v10),
            SRAB_ERR_INVALID_ARGUMENT);

  srab_report *manual = nullptr;
  ASSERT_EQ(srab_report_create("hand", SRAB_ATTACK_BASIC, 5, 1, 1, &manual),
            SRAB_OK);
  srab_report_add_model(manual, "bicubic");
  const srab_report_entry entry{"img", "bicubic", 0.1, 30.0, 25.0,
                                NAN,   NAN,       NAN};
  ASSERT_EQ(srab_report_add_entry(manual, &entry), SRAB_OK);
  ASSERT_EQ(srab_report_summarize(manual), SRAB_OK);
  TempDir dir;
  ASSERT_EQ(srab_report_write(manual, SRAB_FORMAT_CSV,
                              (dir / "r.csv").string().c_str()),
            SRAB_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "r.csv"));

  for (srab_report *r : {rep, parsed, transfer, manual})
    srab_report_free(r);
  srab_model_free(bic);
  srab_dataset_free(two);
  srab_dataset_free(ds);
}

TEST(CApi, TrainingProgress) {
  srab_dataset *ds = nullptr;
  ASSERT_EQ(srab_dataset_load_dir(
                srab::testing::fixture_dir("train").string().c_str(), 4, &ds),
            SRAB_OK);
  srab_train_options o;
  srab_train_options_default(&o);
  EXPECT_EQ(o.steps, 2000);
  EXPECT_EQ(o.patch_size, 96);
  o.steps = 3;
  o.patch_size = 16;
  o.batch_size = 2;
  int calls = 0;
  srab_model *m = nullptr;
  ASSERT_EQ(srab_train("micro", ds, &o,
                       [](int, double loss, void *user) {
                         EXPECT_TRUE(std::isfinite(loss));
                         ++*static_cast<int *>(user);
                       },
                       &calls, &m),
            SRAB_OK);
  EXPECT_EQ(calls, 3);
  EXPECT_STREQ(srab_model_name(m), "micro");
  o.patch_size = 15;
  srab_model *bad = nullptr;
  EXPECT_EQ(srab_train("micro", ds, &o, nullptr, nullptr, &bad),
            SRAB_ERR_CONFIGURATION);
  srab_model_free(m);
  srab_dataset_free(ds);
}

} // namespace
