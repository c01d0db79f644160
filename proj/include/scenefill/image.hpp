#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "scenefill/geometry.hpp"

namespace scenefill {

/// Three-plane color raster with samples in [0,1].
struct RasterImage {
  int width = 0;
  int height = 0;
  std::array<std::vector<float>, 3> plane;  // r, g, b

  static RasterImage create(int w, int h, float r = 0.f, float g = 0.f, float b = 0.f);

  bool inBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  float at(int channel, int x, int y) const { return plane[channel][index(x, y)]; }
  void set(int channel, int x, int y, float v) { plane[channel][index(x, y)] = v; }
  void setRgb(int x, int y, float r, float g, float b) {
    std::size_t i = index(x, y);
    plane[0][i] = r;
    plane[1][i] = g;
    plane[2][i] = b;
  }
  float gray(int x, int y) const {
    std::size_t i = index(x, y);
    return (plane[0][i] + plane[1][i] + plane[2][i]) / 3.0f;
  }
};

/// Per-pixel membership of the unknown region. inside != 0 means the pixel
/// belongs to the region to be synthesized; the complement is the source
/// region, and the fill front is the set of source pixels 4-adjacent to it.
struct RegionMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> inside;

  static RegionMask create(int w, int h, bool allInside = false);

  bool inBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  bool isInside(int x, int y) const { return inside[index(x, y)] != 0; }
  void setInside(int x, int y, bool v) { inside[index(x, y)] = v ? 1 : 0; }

  std::size_t insideCount() const;
  bool empty() const { return insideCount() == 0; }

  /// True for known pixels 4-adjacent to at least one unknown pixel.
  bool isBoundary(int x, int y) const;

  /// The fill front, recomputed fresh, in row-major order.
  std::vector<PixelCoord> boundary() const;
};

/// Square odd-sided neighborhood descriptor.
struct Patch {
  int cx = 0;
  int cy = 0;
  int halfExtent = 1;  // side = 2*halfExtent + 1

  int side() const { return 2 * halfExtent + 1; }
};

struct PatchSample {
  float r = 0.f, g = 0.f, b = 0.f;
  bool known = false;  // false when the source pixel is in the unknown region
  bool valid = true;   // false when resampling left no source data
};

/// Dense sample block for a patch; row-major, samples[(dy+h)*side + (dx+h)].
struct PatchSamples {
  int side = 0;
  std::vector<PatchSample> samples;

  const PatchSample& at(int ix, int iy) const { return samples[iy * side + ix]; }
  PatchSample& at(int ix, int iy) { return samples[iy * side + ix]; }
};

/// Per-channel marginal histogram, normalized over the source pixel count.
struct ColorHistogram {
  int binsPerChannel = 0;
  std::vector<double> counts;  // size 3 * binsPerChannel
  bool emptyRegion = true;
};

/// Copies the l^2 samples under `patch`, flagging samples inside the mask as
/// unknown. The patch must lie fully inside the image; clipping is the
/// caller's job.
PatchSamples extractPatch(const RasterImage& img, const RegionMask& mask, const Patch& patch);

ColorHistogram histogramOf(const RasterImage& img, std::span<const PixelCoord> pixels,
                           int binsPerChannel);

/// Rotates patch samples about the patch center. Multiples of pi/2 are exact
/// index permutations; odd multiples of pi/4 use bilinear resampling, and
/// samples whose source falls outside the patch footprint come back invalid.
PatchSamples rotateResample(const PatchSamples& src, double angle);

}  // namespace scenefill
