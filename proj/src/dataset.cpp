// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/dataset.hpp"

#include <algorithm>

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/image_io.hpp"

namespace srab {

std::vector<ImageTensor> Dataset::hr_images() const {
  std::vector<ImageTensor> out;
  for (const auto &img : images)
    out.push_back(img.hr);
  return out;
}

std::vector<ImageTensor> Dataset::lr_images() const {
  std::vector<ImageTensor> out;
  for (const auto &img : images)
    out.push_back(img.lr);
  return out;
}

DatasetImage make_dataset_image(std::string id, const ImageTensor &hr,
                                int scale) {
  require(scale >= 1, ErrorKind::Configuration, "scale must be >= 1");
  const int h = hr.height() / scale * scale;
  const int w = hr.width() / scale * scale;
  require(h >= kMinHrSide && w >= kMinHrSide, ErrorKind::Data,
          "image " + id + " is " + hr.shape_string() +
              "; HR sides must be at least " + std::to_string(kMinHrSide));
  ImageTensor cropped =
      crop(hr, (hr.height() - h) / 2, (hr.width() - w) / 2, h, w);
  ImageTensor lr = quantize_8bit(bicubic_downscale(cropped, scale));
  return {std::move(id), std::move(cropped), std::move(lr)};
}

Dataset load_image_dir(const std::filesystem::path &dir, int scale) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    raise(ErrorKind::Io, dir.string() + " is not a readable directory");
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && ext == ".png")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  require(!files.empty(), ErrorKind::Data,
          "no PNG images found in " + dir.string());
  Dataset ds;
  ds.name = dir.filename().empty() ? dir.parent_path().filename().string()
                                   : dir.filename().string();
  ds.scale = scale;
  for (const auto &f : files)
    ds.images.push_back(
        make_dataset_image(f.stem().string(), load_png(f), scale));
  return ds;
}

} // namespace srab
