#pragma once

#include <span>
#include <string>

#include "scenefill/image.hpp"

namespace scenefill {

RasterImage readImagePng(const std::string& path);

/// Any nonzero pixel (any channel) marks the unknown region.
RegionMask readMaskPng(const std::string& path);

void writeImagePng(const RasterImage& img, const std::string& path);
void writeGrayPng(std::span<const float> values, int width, int height, const std::string& path);

}  // namespace scenefill
