// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include <gtest/gtest.h>

#include "srab/bicubic.hpp"
#include "srab/dataset.hpp"
#include "srab/error.hpp"
#include "srab/image_io.hpp"
#include "test_util.hpp"

namespace srab {
namespace {

TEST(MakeDatasetImage, CropsToScaleMultipleAndDerivesLr) {
  const ImageTensor hr = testing::random_image(3, 35, 42, 1);
  const DatasetImage img = make_dataset_image("x", hr, 4);
  EXPECT_EQ(img.hr.height(), 32);
  EXPECT_EQ(img.hr.width(), 40);
  EXPECT_EQ(img.hr.at(0, 0, 0), hr.at(0, 1, 1));
  EXPECT_EQ(img.lr.height(), 8);
  EXPECT_EQ(img.lr.width(), 10);
  EXPECT_EQ(img.lr, quantize_8bit(bicubic_downscale(img.hr, 4)));
  for (double v : img.lr.data())
    EXPECT_EQ(v * 255.0, std::round(v * 255.0));
}

TEST(MakeDatasetImage, RejectsSmallImages) {
  try {
    make_dataset_image("tiny", ImageTensor(3, 31, 64), 4);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
  EXPECT_NO_THROW(make_dataset_image("ok", ImageTensor(3, 32, 32), 4));
}

TEST(LoadImageDir, SortedIdsFromPngFiles) {
  testing::TempDir dir;
  save_png(testing::random_image(3, 40, 40, 2), dir / "b.png");
  save_png(testing::random_image(3, 36, 44, 3), dir / "a.PNG");
  std::ofstream(dir / "notes.txt") << "ignored";
  const Dataset ds = load_image_dir(dir.path(), 4);
  ASSERT_EQ(ds.images.size(), 2u);
  EXPECT_EQ(ds.images[0].id, "a");
  EXPECT_EQ(ds.images[1].id, "b");
  EXPECT_EQ(ds.scale, 4);
  EXPECT_EQ(ds.hr_images().size(), 2u);
  EXPECT_EQ(ds.lr_images()[1], ds.images[1].lr);
}

TEST(LoadImageDir, Errors) {
  testing::TempDir dir;
  try {
    load_image_dir(dir / "missing");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
  try {
    load_image_dir(dir.path());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
}

TEST(LoadImageDir, Fixtures) {
  const Dataset ds = load_image_dir(testing::fixture_dir("eval"));
  EXPECT_EQ(ds.name, "eval");
  ASSERT_EQ(ds.images.size(), 24u);
  for (const DatasetImage &img : ds.images) {
    EXPECT_EQ(img.lr.channels(), 3);
    EXPECT_EQ(img.lr.height() * 4, img.hr.height());
  }
}

} // namespace
} // namespace srab
