#pragma once

#include <array>
#include <vector>

#include "scenefill/image.hpp"

namespace scenefill {

struct ContourConfig {
  double sigma = 1.0;
  std::array<double, 3> channelWeights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double thresholdFloor = 0.1;  // sweep floor for edge collection
  int levels = 32;              // quantized boundary-strength levels
};

/// Gradient magnitude (normalized to [0,1] over known pixels) and gradient
/// orientation in [0, pi). Unknown pixels carry zero strength.
struct EdgeStrengthField {
  int width = 0;
  int height = 0;
  std::vector<float> strength;
  std::vector<float> orientation;

  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  float strengthAt(int x, int y) const { return strength[index(x, y)]; }
};

struct Contour {
  int id = 0;
  std::vector<PixelCoord> pixelChain;  // ordered, all in the known region
  double strength = 0.0;               // boundary-strength level in (0, 1]
  // Pre-merge region roots on the two sides; used for flank lookups.
  int regionA = -1;
  int regionB = -1;
  // For each chain pixel, one adjacent pixel from the B side.
  std::vector<PixelCoord> sideBChain;
};

/// Nested contour family: thresholding at any level yields a valid partition
/// of the known region, and lowering the threshold only splits regions.
struct ContourHierarchy {
  int width = 0;
  int height = 0;
  std::vector<Contour> contours;

  // Watershed basins (-1 on unknown pixels) plus the ordered merge log.
  std::vector<int> basinLabel;
  int basinCount = 0;
  struct Merge {
    int a = 0;
    int b = 0;
    double level = 0.0;
  };
  std::vector<Merge> merges;

  /// Region label per pixel after dissolving all boundaries with level <= t.
  std::vector<int> labelsAt(double t) const;
  int regionCountAt(double t) const;
};

EdgeStrengthField edgeStrength(const RasterImage& img, const RegionMask& mask,
                               const ContourConfig& cfg);

ContourHierarchy buildHierarchy(const EdgeStrengthField& field, const RegionMask& mask,
                                const ContourConfig& cfg);

/// Contours with strength strictly above t, ordered by id.
std::vector<Contour> contoursAtThreshold(const ContourHierarchy& h, double t);

}  // namespace scenefill
