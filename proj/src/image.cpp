#include "scenefill/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scenefill {

RasterImage RasterImage::create(int w, int h, float r, float g, float b) {
  RasterImage img;
  img.width = w;
  img.height = h;
  std::size_t n = static_cast<std::size_t>(w) * h;
  img.plane[0].assign(n, r);
  img.plane[1].assign(n, g);
  img.plane[2].assign(n, b);
  return img;
}

RegionMask RegionMask::create(int w, int h, bool allInside) {
  RegionMask m;
  m.width = w;
  m.height = h;
  m.inside.assign(static_cast<std::size_t>(w) * h, allInside ? 1 : 0);
  return m;
}

std::size_t RegionMask::insideCount() const {
  return static_cast<std::size_t>(
      std::count_if(inside.begin(), inside.end(), [](std::uint8_t v) { return v != 0; }));
}

bool RegionMask::isBoundary(int x, int y) const {
  if (isInside(x, y)) return false;
  static constexpr int dx[4] = {0, -1, 1, 0};
  static constexpr int dy[4] = {-1, 0, 0, 1};
  for (int k = 0; k < 4; ++k) {
    int nx = x + dx[k], ny = y + dy[k];
    if (inBounds(nx, ny) && isInside(nx, ny)) return true;
  }
  return false;
}

std::vector<PixelCoord> RegionMask::boundary() const {
  std::vector<PixelCoord> out;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (isBoundary(x, y)) out.push_back({x, y});
  return out;
}

PatchSamples extractPatch(const RasterImage& img, const RegionMask& mask, const Patch& patch) {
  int h = patch.halfExtent;
  int x0 = patch.cx - h, y0 = patch.cy - h;
  int x1 = patch.cx + h, y1 = patch.cy + h;
  if (x0 < 0 || y0 < 0 || x1 >= img.width || y1 >= img.height) {
    int bx = x0 < 0 ? x0 : x1;
    int by = y0 < 0 ? y0 : y1;
    throw std::out_of_range("patch sample (" + std::to_string(bx) + ", " + std::to_string(by) +
                            ") outside image " + std::to_string(img.width) + "x" +
                            std::to_string(img.height));
  }
  PatchSamples out;
  out.side = patch.side();
  out.samples.resize(static_cast<std::size_t>(out.side) * out.side);
  for (int dy = -h; dy <= h; ++dy) {
    for (int dx = -h; dx <= h; ++dx) {
      int x = patch.cx + dx, y = patch.cy + dy;
      PatchSample& s = out.at(dx + h, dy + h);
      std::size_t i = img.index(x, y);
      s.r = img.plane[0][i];
      s.g = img.plane[1][i];
      s.b = img.plane[2][i];
      s.known = !mask.isInside(x, y);
      s.valid = true;
    }
  }
  return out;
}

ColorHistogram histogramOf(const RasterImage& img, std::span<const PixelCoord> pixels,
                           int binsPerChannel) {
  if (binsPerChannel < 2) throw std::invalid_argument("histogramOf: binsPerChannel must be >= 2");
  ColorHistogram hist;
  hist.binsPerChannel = binsPerChannel;
  hist.counts.assign(static_cast<std::size_t>(3) * binsPerChannel, 0.0);
  hist.emptyRegion = pixels.empty();
  if (pixels.empty()) return hist;
  for (const PixelCoord& p : pixels) {
    std::size_t i = img.index(p.x, p.y);
    for (int c = 0; c < 3; ++c) {
      float v = img.plane[c][i];
      int bin = std::min(static_cast<int>(v * binsPerChannel), binsPerChannel - 1);
      bin = std::max(bin, 0);
      hist.counts[static_cast<std::size_t>(c) * binsPerChannel + bin] += 1.0;
    }
  }
  double norm = 1.0 / (3.0 * static_cast<double>(pixels.size()));
  for (double& c : hist.counts) c *= norm;
  return hist;
}

namespace {

// Index permutation for angle = k * pi/2 about the patch center.
PatchSamples rotateExact(const PatchSamples& src, int quarterTurns) {
  int side = src.side;
  int c = (side - 1) / 2;
  int k = ((quarterTurns % 4) + 4) % 4;
  PatchSamples out;
  out.side = side;
  out.samples.resize(src.samples.size());
  // Destination (u,v) pulls from source rotated by -angle.
  for (int v = 0; v < side; ++v) {
    for (int u = 0; u < side; ++u) {
      int du = u - c, dv = v - c;
      int sx = 0, sy = 0;
      switch (k) {
        case 0: sx = du; sy = dv; break;
        case 1: sx = dv; sy = -du; break;   // R(-pi/2)
        case 2: sx = -du; sy = -dv; break;  // R(pi)
        case 3: sx = -dv; sy = du; break;   // R(+pi/2) inverse
      }
      out.at(u, v) = src.at(sx + c, sy + c);
    }
  }
  return out;
}

}  // namespace

PatchSamples rotateResample(const PatchSamples& src, double angle) {
  constexpr double kQuarter = M_PI / 2.0;
  double turns = angle / kQuarter;
  double nearestTurn = std::round(turns);
  if (std::abs(turns - nearestTurn) < 1e-9) {
    return rotateExact(src, static_cast<int>(nearestTurn));
  }

  int side = src.side;
  double c = (side - 1) / 2.0;
  double cosA = std::cos(-angle), sinA = std::sin(-angle);
  PatchSamples out;
  out.side = side;
  out.samples.resize(src.samples.size());
  for (int v = 0; v < side; ++v) {
    for (int u = 0; u < side; ++u) {
      double du = u - c, dv = v - c;
      double sx = c + du * cosA - dv * sinA;
      double sy = c + du * sinA + dv * cosA;
      PatchSample& d = out.at(u, v);
      if (sx < -1e-9 || sy < -1e-9 || sx > side - 1 + 1e-9 || sy > side - 1 + 1e-9) {
        d = PatchSample{0.f, 0.f, 0.f, false, false};
        continue;
      }
      sx = std::clamp(sx, 0.0, static_cast<double>(side - 1));
      sy = std::clamp(sy, 0.0, static_cast<double>(side - 1));
      int ix = std::min(static_cast<int>(sx), side - 2);
      int iy = std::min(static_cast<int>(sy), side - 2);
      if (side == 1) { ix = 0; iy = 0; }
      double fx = sx - ix, fy = sy - iy;
      double w[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
      const PatchSample* n[4] = {&src.at(ix, iy), &src.at(std::min(ix + 1, side - 1), iy),
                                 &src.at(ix, std::min(iy + 1, side - 1)),
                                 &src.at(std::min(ix + 1, side - 1), std::min(iy + 1, side - 1))};
      double r = 0, g = 0, b = 0;
      bool known = true, valid = true;
      for (int i = 0; i < 4; ++i) {
        if (w[i] <= 1e-12) continue;
        r += w[i] * n[i]->r;
        g += w[i] * n[i]->g;
        b += w[i] * n[i]->b;
        known = known && n[i]->known;
        valid = valid && n[i]->valid;
      }
      d.r = static_cast<float>(r);
      d.g = static_cast<float>(g);
      d.b = static_cast<float>(b);
      d.known = known;
      d.valid = valid;
    }
  }
  return out;
}

}  // namespace scenefill
