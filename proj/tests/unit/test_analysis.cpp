#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "snowfake/analysis.hpp"

using namespace snowfake;

namespace {

ParamSchedule fig4Schedule() {
  ModelParams p;
  p.beta = ConfigTable({2.5, 2, 2, 1, 2, 1, 1});
  p.kappa = ConfigTable(0.1);
  p.mu = ConfigTable(0.001);
  p.rho = 0.1;
  ParamSchedule s;
  s.stages.push_back({0, p});
  return s;
}

// Counts box cells that satisfy all six half-plane constraints.
std::int64_t bruteHull(const std::vector<PlaneCell>& slice) {
  auto extent = [&](auto f) {
    int lo = f(slice[0]), hi = lo;
    for (const auto& c : slice) {
      lo = std::min(lo, f(c));
      hi = std::max(hi, f(c));
    }
    return std::array<int, 2>{lo, hi};
  };
  const auto eu = extent([](const PlaneCell& c) { return c[0]; });
  const auto ev = extent([](const PlaneCell& c) { return c[1]; });
  const auto es = extent([](const PlaneCell& c) { return c[0] + c[1]; });
  std::int64_t n = 0;
  for (int u = -40; u <= 40; ++u) {
    for (int v = -40; v <= 40; ++v) {
      n += u >= eu[0] && u <= eu[1] && v >= ev[0] && v <= ev[1] && u + v >= es[0] &&
           u + v <= es[1];
    }
  }
  return n;
}

std::vector<PlaneCell> hexagon(int r) {
  std::vector<PlaneCell> out;
  for (int u = -r; u <= r; ++u) {
    for (int v = -r; v <= r; ++v) {
      if (hexDistance(u, v) <= r) out.push_back({u, v});
    }
  }
  return out;
}

}  // namespace

TEST(Analysis, HullExamples) {
  EXPECT_EQ(hexHullSize({{0, 0}}), 1);
  EXPECT_EQ(hexHullSize({{0, 0}, {2, 0}}), 3);
  EXPECT_EQ(hexHullSize({{0, 0}, {1, 1}}), 4);
  EXPECT_EQ(hexHullSize({}), 0);
  for (int r = 0; r <= 6; ++r) EXPECT_EQ(hexHullSize(hexagon(r)), 3 * r * r + 3 * r + 1);
  EXPECT_DOUBLE_EQ(convexityDefect({{0, 0}, {2, 0}}), 1.0 / 3.0);
  EXPECT_EQ(convexityDefect(hexagon(4)), 0.0);
  EXPECT_THROW(convexityDefect({}), std::invalid_argument);
}

TEST(Analysis, HullMatchesBruteForceAndSymmetry) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coord(-12, 12);
  std::uniform_int_distribution<int> count(1, 25);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PlaneCell> slice;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) slice.push_back({coord(rng), coord(rng)});
    std::sort(slice.begin(), slice.end());
    slice.erase(std::unique(slice.begin(), slice.end()), slice.end());
    const auto hull = hexHullSize(slice);
    ASSERT_EQ(hull, bruteHull(slice));
    for (int g = 0; g < 12; ++g) {
      std::vector<PlaneCell> image;
      for (const auto& [u, v] : slice) {
        const SiteCoord s = applyPlaneElement({u, v, 0}, g);
        image.push_back({s.u, s.v});
      }
      ASSERT_EQ(hexHullSize(image), hull);
    }
    const double defect = convexityDefect(slice);
    EXPECT_GE(defect, 0.0);
    EXPECT_LT(defect, 1.0);
  }
}

TEST(Analysis, CrossSectionOfSeed) {
  Simulation sim(Domain{8, 3, FoldMode::Fold24}, fig4Schedule(), SeedSpec{});
  EXPECT_EQ(crossSection(sim, 0), hexagon(2));
  EXPECT_TRUE(crossSection(sim, 1).empty());
  EXPECT_THROW(crossSection(sim, 4), std::out_of_range);
  EXPECT_EQ(radii(sim), (std::array<int, 2>{2, 0}));
}

TEST(Analysis, HollownessAtAxis) {
  Simulation sim(Domain{8, 3, FoldMode::Full}, fig4Schedule(), SeedSpec{});
  auto h = hollownessAtAxis(sim);
  EXPECT_EQ(h, std::vector<bool>(7, false));
  auto& st = sim.mutableState();
  st.attached[sim.lattice().indexOf({0, 0, 0})] = 0;
  st.attached[sim.lattice().indexOf({2, 0, 2})] = 1;
  h = hollownessAtAxis(sim);
  EXPECT_TRUE(h[3]);
  EXPECT_TRUE(h[5]);
  EXPECT_FALSE(h[4]);

  // A closed ring at radius 4 around an empty core.
  for (int u = -4; u <= 4; ++u) {
    for (int v = -4; v <= 4; ++v) {
      if (hexDistance(u, v) == 4) st.attached[sim.lattice().indexOf({u, v, -2})] = 1;
    }
  }
  EXPECT_TRUE(hollownessAtAxis(sim)[1]);
  st.attached[sim.lattice().indexOf({4, 0, -2})] = 0;
  EXPECT_FALSE(hollownessAtAxis(sim)[1]);
}

TEST(Analysis, MetricsPartitionMass) {
  Simulation full(Domain{10, 4, FoldMode::Full}, fig4Schedule(), SeedSpec{});
  Simulation folded(Domain{10, 4, FoldMode::Fold24}, fig4Schedule(), SeedSpec{});
  for (int t = 0; t < 150; ++t) {
    full.cycle();
    folded.cycle();
  }
  const MetricsSample a = sampleMetrics(full);
  const MetricsSample b = sampleMetrics(folded);
  EXPECT_EQ(a.t, 150);
  EXPECT_NEAR(a.massCrystal + a.massBoundary + a.massVapor, full.totalMass(), 1e-12);
  EXPECT_EQ(a.attachedCount, b.attachedCount);
  EXPECT_EQ(a.rT, b.rT);
  EXPECT_EQ(a.rZ, b.rZ);
  EXPECT_EQ(a.convexityDefect, b.convexityDefect);
  EXPECT_NEAR(a.massVapor, b.massVapor, 1e-12);
  EXPECT_NEAR(a.edgeDensity, b.edgeDensity, 1e-15);
  std::int64_t count = 0;
  for (auto x : full.state().attached) count += x;
  EXPECT_EQ(a.attachedCount, count);
}
