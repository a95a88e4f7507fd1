#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "snowfake/engine.hpp"

namespace snowfake {

struct MetricsSample {
  std::int64_t t = 0;
  int rT = 0;
  int rZ = 0;
  double massCrystal = 0;
  double massBoundary = 0;
  double massVapor = 0;
  double edgeDensity = 0;
  std::int64_t attachedCount = 0;
  double convexityDefect = 0;
};

/// Max hex distance to the axis and max |z| over the crystal.
std::array<int, 2> radii(const Simulation& sim);

using PlaneCell = std::array<int, 2>;

/// Attached (u, v) cells of layer z, in lexicographic order.
std::vector<PlaneCell> crossSection(const Simulation& sim, int z);

/// Number of lattice cells in the hex-convex hull of `slice`: the smallest
/// region bounded by the six lattice-aligned half-planes u, v, u+v = const.
std::int64_t hexHullSize(const std::vector<PlaneCell>& slice);

/// (#hull cells - #slice cells) / #hull cells. Throws on an empty slice.
double convexityDefect(const std::vector<PlaneCell>& slice);

/// Per layer (index z + H): the axis cell is vacant while some cell of the
/// radius-2 ring in the same layer belongs to the crystal, or some wider ring
/// is entirely crystal and so encloses a cavity around the axis.
std::vector<bool> hollownessAtAxis(const Simulation& sim);

/// Full metric record. The convexity defect is taken on the z = 0 slice and
/// is 0 when that slice is empty.
MetricsSample sampleMetrics(const Simulation& sim);

}  // namespace snowfake
