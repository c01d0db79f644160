#include "scenefill/contour.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "scenefill/error.hpp"

namespace scenefill {

namespace {

struct Kernels {
  int radius = 1;
  std::vector<double> g, gx, gy;  // (2r+1)^2 taps, row-major
  double absGxTotal = 0.0, absGyTotal = 0.0;
};

Kernels makeKernels(double sigma) {
  Kernels k;
  k.radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  int n = 2 * k.radius + 1;
  k.g.resize(static_cast<std::size_t>(n) * n);
  k.gx.resize(k.g.size());
  k.gy.resize(k.g.size());
  double s2 = sigma * sigma;
  for (int dy = -k.radius; dy <= k.radius; ++dy) {
    for (int dx = -k.radius; dx <= k.radius; ++dx) {
      std::size_t i = static_cast<std::size_t>(dy + k.radius) * n + (dx + k.radius);
      double g = std::exp(-(dx * dx + dy * dy) / (2.0 * s2));
      k.g[i] = g;
      k.gx[i] = -dx / s2 * g;
      k.gy[i] = -dy / s2 * g;
      k.absGxTotal += std::abs(k.gx[i]);
      k.absGyTotal += std::abs(k.gy[i]);
    }
  }
  return k;
}

// Masked derivative response for one pixel and channel set. Taps under the
// unknown region or outside the image are dropped; the remaining taps are
// made zero-mean against the Gaussian-weighted visible mean (so any constant
// visible neighborhood responds exactly zero) and rescaled by the visible
// fraction of the absolute kernel mass.
void maskedGradient(const RasterImage& img, const RegionMask& mask, const Kernels& k, int x, int y,
                    double gxOut[3], double gyOut[3]) {
  int r = k.radius;
  int n = 2 * r + 1;
  double sumG = 0.0, sumGx = 0.0, sumGy = 0.0, absGx = 0.0, absGy = 0.0;
  double sumGI[3] = {0, 0, 0}, sumGxI[3] = {0, 0, 0}, sumGyI[3] = {0, 0, 0};
  for (int dy = -r; dy <= r; ++dy) {
    int yy = y + dy;
    if (yy < 0 || yy >= img.height) continue;
    for (int dx = -r; dx <= r; ++dx) {
      int xx = x + dx;
      if (xx < 0 || xx >= img.width) continue;
      if (mask.isInside(xx, yy)) continue;
      std::size_t ki = static_cast<std::size_t>(dy + r) * n + (dx + r);
      std::size_t pi = img.index(xx, yy);
      double g = k.g[ki], gx = k.gx[ki], gy = k.gy[ki];
      sumG += g;
      sumGx += gx;
      sumGy += gy;
      absGx += std::abs(gx);
      absGy += std::abs(gy);
      for (int c = 0; c < 3; ++c) {
        double v = img.plane[c][pi];
        sumGI[c] += g * v;
        sumGxI[c] += gx * v;
        sumGyI[c] += gy * v;
      }
    }
  }
  double fracX = absGx / k.absGxTotal;
  double fracY = absGy / k.absGyTotal;
  for (int c = 0; c < 3; ++c) {
    if (sumG <= 1e-12 || fracX <= 1e-6 || fracY <= 1e-6) {
      gxOut[c] = 0.0;
      gyOut[c] = 0.0;
      continue;
    }
    double mean = sumGI[c] / sumG;
    gxOut[c] = (sumGxI[c] - mean * sumGx) / fracX;
    gyOut[c] = (sumGyI[c] - mean * sumGy) / fracY;
  }
}

}  // namespace

EdgeStrengthField edgeStrength(const RasterImage& img, const RegionMask& mask,
                               const ContourConfig& cfg) {
  Kernels kernels = makeKernels(cfg.sigma);
  EdgeStrengthField field;
  field.width = img.width;
  field.height = img.height;
  std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  field.strength.assign(n, 0.f);
  field.orientation.assign(n, 0.f);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      std::size_t i = field.index(x, y);
      if (mask.isInside(x, y)) continue;
      double gx[3], gy[3];
      maskedGradient(img, mask, kernels, x, y, gx, gy);
      double magnitude = 0.0, cx = 0.0, cy = 0.0;
      for (int c = 0; c < 3; ++c) {
        magnitude += cfg.channelWeights[c] * std::sqrt(gx[c] * gx[c] + gy[c] * gy[c]);
        cx += cfg.channelWeights[c] * gx[c];
        cy += cfg.channelWeights[c] * gy[c];
      }
      field.strength[i] = static_cast<float>(magnitude);
      double theta = std::atan2(cy, cx);
      if (theta < 0.0) theta += M_PI;
      if (theta >= M_PI) theta -= M_PI;
      field.orientation[i] = static_cast<float>(theta);
    }
  }

  float maxStrength = 0.f;
  for (std::size_t i = 0; i < n; ++i) maxStrength = std::max(maxStrength, field.strength[i]);
  if (maxStrength > 0.f) {
    float inv = 1.f / maxStrength;
    for (float& s : field.strength) s *= inv;
  }
  return field;
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct ArcKey {
  int a, b;  // a < b, region roots
  friend auto operator<=>(const ArcKey&, const ArcKey&) = default;
};

struct ArcData {
  double strengthSum = 0.0;
  int count = 0;
  // Boundary pixel pairs (p on side a, q on side b).
  std::vector<std::pair<PixelCoord, PixelCoord>> pairs;
  double mean() const { return count > 0 ? strengthSum / count : 0.0; }
};

// Orders a connected pixel set into a chain. Uses the double-BFS geodesic
// for open arcs; closed loops fall back to a greedy perimeter walk.
std::vector<PixelCoord> traceChain(const std::vector<PixelCoord>& component) {
  if (component.size() <= 2) {
    std::vector<PixelCoord> out = component;
    std::sort(out.begin(), out.end());
    return out;
  }
  std::map<PixelCoord, std::vector<PixelCoord>> adjacency;
  std::set<PixelCoord> inSet(component.begin(), component.end());
  for (const PixelCoord& p : component) {
    auto& adj = adjacency[p];
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        PixelCoord q{p.x + dx, p.y + dy};
        if (inSet.count(q)) adj.push_back(q);
      }
    std::sort(adj.begin(), adj.end());
  }

  auto bfsFarthest = [&](PixelCoord start, std::map<PixelCoord, PixelCoord>* parent) {
    std::map<PixelCoord, int> dist;
    std::queue<PixelCoord> q;
    q.push(start);
    dist[start] = 0;
    PixelCoord far = start;
    int farDist = 0;
    while (!q.empty()) {
      PixelCoord p = q.front();
      q.pop();
      int d = dist[p];
      if (d > farDist || (d == farDist && p < far)) {
        farDist = d;
        far = p;
      }
      for (const PixelCoord& nb : adjacency[p]) {
        if (!dist.count(nb)) {
          dist[nb] = d + 1;
          if (parent) (*parent)[nb] = p;
          q.push(nb);
        }
      }
    }
    return far;
  };

  PixelCoord seed = *std::min_element(component.begin(), component.end());
  PixelCoord end1 = bfsFarthest(seed, nullptr);
  std::map<PixelCoord, PixelCoord> parent;
  PixelCoord end2 = bfsFarthest(end1, &parent);
  std::vector<PixelCoord> path;
  for (PixelCoord p = end2;; p = parent[p]) {
    path.push_back(p);
    if (p == end1) break;
  }
  std::reverse(path.begin(), path.end());

  if (path.size() * 10 >= component.size() * 7) return path;

  // Mostly a loop: greedy walk visiting every pixel once, 4-neighbors first.
  std::vector<PixelCoord> walk;
  std::set<PixelCoord> visited;
  PixelCoord cur = seed;
  walk.push_back(cur);
  visited.insert(cur);
  while (true) {
    const auto& adj = adjacency[cur];
    const PixelCoord* next = nullptr;
    bool nextIs4 = false;
    for (const PixelCoord& nb : adj) {
      if (visited.count(nb)) continue;
      bool is4 = (nb.x == cur.x || nb.y == cur.y);
      if (!next || (is4 && !nextIs4)) {
        next = &nb;
        nextIs4 = is4;
      }
    }
    if (!next) break;
    cur = *next;
    walk.push_back(cur);
    visited.insert(cur);
  }
  return walk;
}

}  // namespace

ContourHierarchy buildHierarchy(const EdgeStrengthField& field, const RegionMask& mask,
                                const ContourConfig& cfg) {
  int w = field.width, h = field.height;
  std::size_t n = static_cast<std::size_t>(w) * h;

  std::vector<PixelCoord> known;
  known.reserve(n);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (!mask.isInside(x, y)) known.push_back({x, y});
  if (known.empty()) throw Error(ErrorCode::EmptyRegion, "no known region");

  ContourHierarchy out;
  out.width = w;
  out.height = h;
  out.basinLabel.assign(n, -1);

  // Watershed basins: flood known pixels in ascending strength; a pixel with
  // no labeled 4-neighbor seeds a new basin, otherwise it joins the labeled
  // neighbor with the weakest strength.
  std::stable_sort(known.begin(), known.end(), [&](const PixelCoord& a, const PixelCoord& b) {
    float sa = field.strengthAt(a.x, a.y), sb = field.strengthAt(b.x, b.y);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  static constexpr int dx4[4] = {0, -1, 1, 0};
  static constexpr int dy4[4] = {-1, 0, 0, 1};
  int basinCount = 0;
  for (const PixelCoord& p : known) {
    int best = -1;
    float bestStrength = 0.f;
    for (int k = 0; k < 4; ++k) {
      int nx = p.x + dx4[k], ny = p.y + dy4[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      int lbl = out.basinLabel[field.index(nx, ny)];
      if (lbl < 0) continue;
      float s = field.strengthAt(nx, ny);
      if (best < 0 || s < bestStrength || (s == bestStrength && lbl < best)) {
        best = lbl;
        bestStrength = s;
      }
    }
    out.basinLabel[field.index(p.x, p.y)] = best >= 0 ? best : basinCount++;
  }
  out.basinCount = basinCount;
  if (basinCount == 1) return out;  // single region, nothing to merge

  // Region adjacency arcs with mean boundary strength.
  std::map<ArcKey, ArcData> arcs;
  std::map<int, std::set<int>> neighbors;
  auto addPair = [&](PixelCoord p, PixelCoord q) {
    int la = out.basinLabel[field.index(p.x, p.y)];
    int lb = out.basinLabel[field.index(q.x, q.y)];
    if (la == lb) return;
    if (la > lb) {
      std::swap(la, lb);
      std::swap(p, q);
    }
    ArcData& arc = arcs[{la, lb}];
    arc.strengthSum += 0.5 * (field.strengthAt(p.x, p.y) + field.strengthAt(q.x, q.y));
    arc.count += 1;
    arc.pairs.emplace_back(p, q);
    neighbors[la].insert(lb);
    neighbors[lb].insert(la);
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (mask.isInside(x, y)) continue;
      if (x + 1 < w && !mask.isInside(x + 1, y)) addPair({x, y}, {x + 1, y});
      if (y + 1 < h && !mask.isInside(x, y + 1)) addPair({x, y}, {x, y + 1});
    }

  // Greedy lowest-strength merging. Raw removal levels are forced monotone so
  // thresholding the final hierarchy always nests.
  struct QueueEntry {
    double mean;
    int a, b;
    bool operator>(const QueueEntry& o) const {
      if (mean != o.mean) return mean > o.mean;
      if (a != o.a) return a > o.a;
      return b > o.b;
    }
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue;
  for (const auto& [key, arc] : arcs) queue.push({arc.mean(), key.a, key.b});

  DisjointSet ds(basinCount);
  double lastLevel = 0.0;
  int contourId = 0;
  struct RawContour {
    Contour contour;
    double rawLevel;
  };
  std::vector<RawContour> rawContours;

  while (!queue.empty()) {
    QueueEntry e = queue.top();
    queue.pop();
    int ra = ds.find(e.a), rb = ds.find(e.b);
    if (ra == rb) continue;
    ArcKey key{std::min(ra, rb), std::max(ra, rb)};
    auto it = arcs.find(key);
    if (it == arcs.end() || std::abs(it->second.mean() - e.mean) > 1e-12 || e.a != key.a ||
        e.b != key.b)
      continue;  // stale entry

    ArcData arc = std::move(it->second);
    arcs.erase(it);
    double level = std::max(arc.mean(), lastLevel);
    lastLevel = level;
    out.merges.push_back({key.a, key.b, level});

    // Emit one contour per 8-connected component of the arc.
    {
      std::set<PixelCoord> remaining;
      std::map<PixelCoord, PixelCoord> sideB;
      for (const auto& [p, q] : arc.pairs) {
        remaining.insert(p);
        auto found = sideB.find(p);
        if (found == sideB.end() || q < found->second) sideB[p] = q;
      }
      while (!remaining.empty()) {
        PixelCoord start = *remaining.begin();
        std::vector<PixelCoord> component;
        std::queue<PixelCoord> bfs;
        bfs.push(start);
        remaining.erase(start);
        while (!bfs.empty()) {
          PixelCoord p = bfs.front();
          bfs.pop();
          component.push_back(p);
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              PixelCoord q{p.x + dx, p.y + dy};
              auto f = remaining.find(q);
              if (f != remaining.end()) {
                remaining.erase(f);
                bfs.push(q);
              }
            }
        }
        Contour contour;
        contour.id = contourId++;
        contour.pixelChain = traceChain(component);
        contour.regionA = key.a;
        contour.regionB = key.b;
        contour.sideBChain.reserve(contour.pixelChain.size());
        for (const PixelCoord& p : contour.pixelChain) contour.sideBChain.push_back(sideB.at(p));
        rawContours.push_back({std::move(contour), level});
      }
    }

    // Fold the absorbed region's arcs into the survivor.
    ds.unite(key.b, key.a);
    int survivor = ds.find(key.a);
    int absorbed = survivor == key.a ? key.b : key.a;
    auto nbrsIt = neighbors.find(absorbed);
    std::set<int> absorbedNbrs = nbrsIt != neighbors.end() ? std::move(nbrsIt->second) : std::set<int>{};
    neighbors.erase(absorbed);
    for (int nb : absorbedNbrs) {
      int rb2 = ds.find(nb);
      if (rb2 == survivor) continue;
      ArcKey oldKey{std::min(absorbed, rb2), std::max(absorbed, rb2)};
      auto oldIt = arcs.find(oldKey);
      if (oldIt == arcs.end()) continue;
      ArcData moved = std::move(oldIt->second);
      arcs.erase(oldIt);
      ArcKey newKey{std::min(survivor, rb2), std::max(survivor, rb2)};
      ArcData& merged = arcs[newKey];
      merged.strengthSum += moved.strengthSum;
      merged.count += moved.count;
      merged.pairs.insert(merged.pairs.end(), moved.pairs.begin(), moved.pairs.end());
      neighbors[survivor].insert(rb2);
      neighbors[rb2].insert(survivor);
      neighbors[rb2].erase(absorbed);
      queue.push({merged.mean(), newKey.a, newKey.b});
    }
    neighbors[survivor].erase(absorbed);
  }

  // Quantize removal levels into cfg.levels values in (0, 1].
  int levels = std::max(2, cfg.levels);
  for (RawContour& rc : rawContours) {
    double q = std::ceil(std::clamp(rc.rawLevel, 0.0, 1.0) * levels) / levels;
    rc.contour.strength = std::clamp(q, 1.0 / levels, 1.0);
    out.contours.push_back(std::move(rc.contour));
  }
  for (auto& m : out.merges) {
    double q = std::ceil(std::clamp(m.level, 0.0, 1.0) * levels) / levels;
    m.level = std::clamp(q, 1.0 / levels, 1.0);
  }
  return out;
}

std::vector<int> ContourHierarchy::labelsAt(double t) const {
  DisjointSet ds(basinCount);
  for (const Merge& m : merges)
    if (m.level <= t) ds.unite(m.a, m.b);
  std::vector<int> labels(basinLabel.size(), -1);
  for (std::size_t i = 0; i < basinLabel.size(); ++i)
    if (basinLabel[i] >= 0) labels[i] = ds.find(basinLabel[i]);
  return labels;
}

int ContourHierarchy::regionCountAt(double t) const {
  if (basinCount == 0) return 0;
  DisjointSet ds(basinCount);
  for (const Merge& m : merges)
    if (m.level <= t) ds.unite(m.a, m.b);
  std::set<int> roots;
  for (int i = 0; i < basinCount; ++i) roots.insert(ds.find(i));
  return static_cast<int>(roots.size());
}

std::vector<Contour> contoursAtThreshold(const ContourHierarchy& h, double t) {
  std::vector<Contour> out;
  for (const Contour& c : h.contours)
    if (c.strength > t) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const Contour& a, const Contour& b) { return a.id < b.id; });
  return out;
}

}  // namespace scenefill
