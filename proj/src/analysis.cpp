#include "snowfake/analysis.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <stdexcept>

namespace snowfake {

std::array<int, 2> radii(const Simulation& sim) { return sim.crystalRadii(); }

std::vector<PlaneCell> crossSection(const Simulation& sim, int z) {
  const Domain& d = sim.lattice().domain();
  if (std::abs(z) > d.halfHeight) throw std::out_of_range("layer outside the domain");
  std::vector<PlaneCell> out;
  const int R = d.radius;
  for (int u = -R; u <= R; ++u) {
    for (int v = -R; v <= R; ++v) {
      if (hexDistance(u, v) > R) continue;
      if (sim.isAttached({u, v, z})) out.push_back({u, v});
    }
  }
  return out;
}

std::int64_t hexHullSize(const std::vector<PlaneCell>& slice) {
  if (slice.empty()) return 0;
  int uLo = INT_MAX, uHi = INT_MIN, vLo = INT_MAX, vHi = INT_MIN, sLo = INT_MAX, sHi = INT_MIN;
  for (const auto& [u, v] : slice) {
    uLo = std::min(uLo, u);
    uHi = std::max(uHi, u);
    vLo = std::min(vLo, v);
    vHi = std::max(vHi, v);
    sLo = std::min(sLo, u + v);
    sHi = std::max(sHi, u + v);
  }
  std::int64_t count = 0;
  for (int u = uLo; u <= uHi; ++u) {
    const int lo = std::max(vLo, sLo - u);
    const int hi = std::min(vHi, sHi - u);
    if (hi >= lo) count += hi - lo + 1;
  }
  return count;
}

double convexityDefect(const std::vector<PlaneCell>& slice) {
  if (slice.empty()) throw std::invalid_argument("convexity defect of an empty slice");
  const auto hull = static_cast<double>(hexHullSize(slice));
  return (hull - static_cast<double>(slice.size())) / hull;
}

std::vector<bool> hollownessAtAxis(const Simulation& sim) {
  const Domain& d = sim.lattice().domain();
  std::vector<bool> out(static_cast<std::size_t>(2 * d.halfHeight + 1), false);
  if (d.radius < 2) return out;
  for (int z = -d.halfHeight; z <= d.halfHeight; ++z) {
    if (sim.isAttached({0, 0, z})) continue;
    bool hollow = false;
    for (int k = 2; k <= d.radius && !hollow; ++k) {
      int attached = 0;
      int total = 0;
      for (int u = -k; u <= k; ++u) {
        for (int v = -k; v <= k; ++v) {
          if (hexDistance(u, v) != k) continue;
          ++total;
          attached += sim.isAttached({u, v, z});
        }
      }
      hollow = k == 2 ? attached > 0 : attached == total;
    }
    out[static_cast<std::size_t>(z + d.halfHeight)] = hollow;
  }
  return out;
}

MetricsSample sampleMetrics(const Simulation& sim) {
  const Lattice& L = sim.lattice();
  const SimState& s = sim.state();
  MetricsSample m;
  m.t = s.time;
  const auto r = sim.crystalRadii();
  m.rT = r[0];
  m.rZ = r[1];
  const std::size_t n = L.size();
  m.massCrystal = pairwiseSum(0, n, [&](std::size_t i) {
    return s.attached[i] ? L.orbitSize(i) * s.boundaryMass[i] : 0.0;
  });
  m.massBoundary = pairwiseSum(0, n, [&](std::size_t i) {
    return s.attached[i] ? 0.0 : L.orbitSize(i) * s.boundaryMass[i];
  });
  m.massVapor = pairwiseSum(0, n, [&](std::size_t i) {
    return L.orbitSize(i) * s.diffusiveMass[i];
  });
  m.edgeDensity = sim.edgeDensity();
  for (std::size_t i = 0; i < n; ++i) m.attachedCount += s.attached[i] ? L.orbitSize(i) : 0;
  const auto slice = crossSection(sim, 0);
  m.convexityDefect = slice.empty() ? 0.0 : convexityDefect(slice);
  return m;
}

}  // namespace snowfake
