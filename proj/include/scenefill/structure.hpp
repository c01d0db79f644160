#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scenefill/contour.hpp"
#include "scenefill/image.hpp"

namespace scenefill {

enum class PairMetric { Paper, Regularized };

struct StructureConfig {
  double thresholdFloor = 0.1;   // sweep floor for boundary-edge collection
  double sampleSpacing = 3.0;    // chain resampling step in px
  int flankDepth = 2;            // extra quantization levels for flank regions
  int histogramBins = 16;
  double flankLimit = 0.6;       // per-flank divergence cap
  double unmatchedCost = 0.25;   // price of leaving an edge single
  double segmentPenalty = 2.0;   // polyline simplification, squared-px units
  PairMetric pairMetric = PairMetric::Paper;
  int maxEdges = 64;             // strongest edges kept when the front is busy
  int approachPoints = 12;       // chain context kept per edge, in samples
  bool refineSubpixel = true;
};

/// A contour chain that reaches the unknown-region boundary, oriented so the
/// last pixel sits on the fill front.
struct BoundaryEdge {
  int id = 0;
  int contourId = 0;
  std::vector<PixelCoord> pixelChain;  // interior -> boundary, all known pixels
  std::vector<Vec2> resampledChain;    // spacing cfg.sampleSpacing, subpixel
  double strength = 0.0;
  long boundaryPosition = 0;  // arc-length index along the traversed front
  ColorHistogram flank1, flank2;
};

struct EdgePairing {
  struct Pair {
    int source = 0;  // edge ids
    int target = 0;
    double cost = 0.0;
  };
  std::vector<Pair> pairs;
  std::vector<int> unmatched;
  double totalCost = 0.0;
};

/// G2-continuous bridge across the unknown region: curvature varies linearly
/// between profile knots, so every piece is a clothoid segment.
struct StructureCurve {
  int sourceEdgeId = 0;
  int targetEdgeId = 0;
  std::vector<Vec2> samples;      // ~0.25 px spacing
  std::vector<double> headings;   // one per sample
  std::vector<double> arcLength;  // one per sample
  struct Knot {
    double s = 0.0;
    double kappa = 0.0;
  };
  std::vector<Knot> curvatureProfile;
  bool fallback = false;

  double totalLength() const { return arcLength.empty() ? 0.0 : arcLength.back(); }
  double kappaAt(double s) const;
  Vec2 positionAt(double s) const;
};

std::vector<BoundaryEdge> collectBoundaryEdges(const ContourHierarchy& hierarchy,
                                               const EdgeStrengthField& field,
                                               const RasterImage& img, const RegionMask& mask,
                                               const StructureConfig& cfg);

/// Jensen-Shannon divergence, natural log; symmetric, in [0, 2 ln 2].
double jsDivergence(const ColorHistogram& h1, const ColorHistogram& h2);

struct PairCostDetail {
  double cost = 0.0;
  // Flank distances for the two correspondences: (1<->1, 2<->2) and (1<->2, 2<->1).
  double straight1 = 0.0, straight2 = 0.0;
  double crossed1 = 0.0, crossed2 = 0.0;
  bool admissible(double flankLimit) const {
    return (straight1 < flankLimit && straight2 < flankLimit) ||
           (crossed1 < flankLimit && crossed2 < flankLimit);
  }
};

PairCostDetail pairCostDetail(const BoundaryEdge& es, const BoundaryEdge& et, double lMax,
                              PairMetric metric);
double pairCost(const BoundaryEdge& es, const BoundaryEdge& et, double lMax,
                PairMetric metric = PairMetric::Paper);

/// Minimum-cost non-crossing partial matching over the boundary order.
EdgePairing matchEdges(std::span<const BoundaryEdge> edges, const StructureConfig& cfg);

/// Signed Menger curvature of three distinct points.
double mengerCurvature(const Vec2& p0, const Vec2& p1, const Vec2& p2);

StructureCurve fitCurve(const BoundaryEdge& es, const BoundaryEdge& et, const RegionMask& mask,
                        const StructureConfig& cfg);

}  // namespace scenefill
