#include "scenefill/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "scenefill/error.hpp"

namespace scenefill {

namespace {

std::vector<std::uint8_t> readRgb(const std::string& path, int& width, int& height) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::IoError, "cannot read PNG '" + path + "': " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, "cannot decode PNG '" + path + "': " + image.message);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  return buffer;
}

std::uint8_t toByte(float v) {
  float scaled = std::round(std::clamp(v, 0.f, 1.f) * 255.f);
  return static_cast<std::uint8_t>(scaled);
}

void writeRgbBuffer(const std::vector<std::uint8_t>& buffer, int width, int height,
                    const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, "cannot write PNG '" + path + "': " + image.message);
  }
}

}  // namespace

RasterImage readImagePng(const std::string& path) {
  int w = 0, h = 0;
  std::vector<std::uint8_t> rgb = readRgb(path, w, h);
  RasterImage img = RasterImage::create(w, h);
  std::size_t n = static_cast<std::size_t>(w) * h;
  for (std::size_t i = 0; i < n; ++i) {
    img.plane[0][i] = rgb[3 * i + 0] / 255.f;
    img.plane[1][i] = rgb[3 * i + 1] / 255.f;
    img.plane[2][i] = rgb[3 * i + 2] / 255.f;
  }
  return img;
}

RegionMask readMaskPng(const std::string& path) {
  int w = 0, h = 0;
  std::vector<std::uint8_t> rgb = readRgb(path, w, h);
  RegionMask mask = RegionMask::create(w, h);
  std::size_t n = static_cast<std::size_t>(w) * h;
  for (std::size_t i = 0; i < n; ++i) {
    mask.inside[i] = (rgb[3 * i] | rgb[3 * i + 1] | rgb[3 * i + 2]) ? 1 : 0;
  }
  return mask;
}

void writeImagePng(const RasterImage& img, const std::string& path) {
  std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  std::vector<std::uint8_t> rgb(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    rgb[3 * i + 0] = toByte(img.plane[0][i]);
    rgb[3 * i + 1] = toByte(img.plane[1][i]);
    rgb[3 * i + 2] = toByte(img.plane[2][i]);
  }
  writeRgbBuffer(rgb, img.width, img.height, path);
}

void writeGrayPng(std::span<const float> values, int width, int height, const std::string& path) {
  std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> rgb(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t b = toByte(values[i]);
    rgb[3 * i + 0] = b;
    rgb[3 * i + 1] = b;
    rgb[3 * i + 2] = b;
  }
  writeRgbBuffer(rgb, width, height, path);
}

}  // namespace scenefill
