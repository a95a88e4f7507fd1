#include <gtest/gtest.h>

#include <cmath>

#include "snowfake/engine.hpp"

using namespace snowfake;

namespace {

ModelParams fig4Params() {
  ModelParams p;
  p.beta = ConfigTable({2.5, 2, 2, 1, 2, 1, 1});
  p.kappa = ConfigTable(0.1);
  p.mu = ConfigTable(0.001);
  p.rho = 0.1;
  return p;
}

ParamSchedule single(const ModelParams& p) {
  ParamSchedule s;
  s.stages.push_back({0, p});
  return s;
}

// A FULL-mode simulation whose fields are then replaced by hand.
struct Bench {
  Simulation sim;

  explicit Bench(const ModelParams& p = fig4Params(), int radius = 6, int halfHeight = 3)
      : sim(Domain{radius, halfHeight, FoldMode::Full}, single(p), SeedSpec{}) {}

  std::size_t at(SiteCoord s) const { return sim.lattice().indexOf(s); }
  double& d(SiteCoord s) { return sim.mutableState().diffusiveMass[at(s)]; }
  double& b(SiteCoord s) { return sim.mutableState().boundaryMass[at(s)]; }

  void clear(double vapor = 0) {
    auto& st = sim.mutableState();
    std::fill(st.attached.begin(), st.attached.end(), 0);
    std::fill(st.boundaryMass.begin(), st.boundaryMass.end(), 0.0);
    std::fill(st.diffusiveMass.begin(), st.diffusiveMass.end(), vapor);
    sim.refreshBoundary();
  }
  void attachSites(std::initializer_list<SiteCoord> sites) {
    auto& st = sim.mutableState();
    for (const auto& s : sites) {
      st.attached[at(s)] = 1;
      st.boundaryMass[at(s)] = 1;
      st.diffusiveMass[at(s)] = 0;
    }
    sim.refreshBoundary();
  }
  double sumD() const {
    double s = 0;
    for (double x : sim.state().diffusiveMass) s += x;
    return s;
  }
};

}  // namespace

TEST(Engine, DiffuseTSpreadsPointMass) {
  Bench w;
  w.clear();
  w.d({0, 0, 0}) = 7;
  w.sim.diffuseT();
  EXPECT_EQ(w.d({0, 0, 0}), 1.0);
  for (const auto& n : tNeighbors({0, 0, 0})) EXPECT_EQ(w.d(n), 1.0);
  EXPECT_EQ(w.sumD(), 7.0);
}

TEST(Engine, DiffuseTReflectsAtCrystal) {
  Bench w;
  w.clear();
  w.attachSites({{0, 0, 0}});
  w.d({1, 0, 0}) = 7;
  w.sim.diffuseT();
  // The attached neighbor contributes the center value 7.
  EXPECT_DOUBLE_EQ(w.d({1, 0, 0}), 2.0);
  EXPECT_EQ(w.d({0, 0, 0}), 0.0);
  EXPECT_NEAR(w.sumD(), 7.0, 1e-14);
}

TEST(Engine, DiffuseZSpreadsVerticalTriple) {
  Bench w;
  w.clear();
  w.d({0, 0, 0}) = 14;
  w.sim.diffuseZ();
  EXPECT_NEAR(w.d({0, 0, 0}), 8.0, 1e-14);
  EXPECT_NEAR(w.d({0, 0, 1}), 3.0, 1e-14);
  EXPECT_NEAR(w.d({0, 0, -1}), 3.0, 1e-14);
  EXPECT_NEAR(w.sumD(), 14.0, 1e-13);
}

TEST(Engine, UniformFieldIsFixedWithCrystalAndWalls) {
  Bench w;
  w.sim.diffuseT();
  w.sim.diffuseZ();
  const auto& st = w.sim.state();
  for (std::size_t i = 0; i < st.attached.size(); ++i) {
    if (st.attached[i]) {
      EXPECT_EQ(st.diffusiveMass[i], 0.0);
    } else {
      EXPECT_NEAR(st.diffusiveMass[i], 0.1, 1e-16);
    }
  }
}

TEST(Engine, DiffusionConservesMassOnRandomField) {
  Bench w;
  auto& st = w.sim.mutableState();
  std::uint64_t x = 12345;
  for (std::size_t i = 0; i < st.diffusiveMass.size(); ++i) {
    if (st.attached[i]) continue;
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    st.diffusiveMass[i] = static_cast<double>(x >> 11) / 9007199254740992.0;
  }
  const double before = w.sim.totalMass();
  w.sim.diffuse();
  EXPECT_NEAR(w.sim.totalMass(), before, 1e-12 * before);
}

TEST(Engine, DriftColumn) {
  ModelParams p = fig4Params();
  p.phi = 0.01;
  Bench w(p);
  w.clear(1.0);
  w.sim.drift();
  EXPECT_EQ(w.d({0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(w.d({0, 0, 3}), 0.99);
  EXPECT_DOUBLE_EQ(w.d({0, 0, -3}), 1.01);
  EXPECT_NEAR(w.sumD(), static_cast<double>(w.sim.lattice().size()), 1e-9);

  // Crystal below blocks the outflow, crystal above blocks the inflow.
  w.clear(1.0);
  w.attachSites({{0, 0, 0}});
  w.sim.drift();
  EXPECT_DOUBLE_EQ(w.d({0, 0, 1}), 1.01);
  EXPECT_DOUBLE_EQ(w.d({0, 0, -1}), 0.99);
  EXPECT_EQ(w.d({0, 0, 0}), 0.0);

  ModelParams off = fig4Params();
  Bench still(off);
  const auto before = still.sim.state().diffusiveMass;
  still.sim.drift();
  EXPECT_EQ(still.sim.state().diffusiveMass, before);
}

TEST(Engine, DriftConservesMass) {
  ModelParams p = fig4Params();
  p.phi = 0.3;
  Bench w(p);
  auto& st = w.sim.mutableState();
  for (std::size_t i = 0; i < st.diffusiveMass.size(); ++i) {
    if (!st.attached[i]) st.diffusiveMass[i] = 0.05 + 0.01 * static_cast<double>(i % 13);
  }
  double column = 0;
  for (int z = -3; z <= 3; ++z) column += w.d({4, 0, z});
  const double before = w.sumD();
  w.sim.drift();
  double after = 0;
  for (int z = -3; z <= 3; ++z) after += w.d({4, 0, z});
  EXPECT_NEAR(after, column, 1e-15);
  EXPECT_NEAR(w.sumD(), before, 1e-12 * before);
}

TEST(Engine, BoundaryCounts) {
  Bench w;
  w.clear();
  w.attachSites({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  auto c = w.sim.boundaryCounts(SiteCoord{0, 0, 0});
  EXPECT_EQ(c.rawT, 2);
  EXPECT_EQ(c.rawZ, 1);
  EXPECT_EQ(c.capped, (BoundaryConfig{2, 1}));

  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {1, -1, 0}});
  c = w.sim.boundaryCounts(SiteCoord{0, 0, 0});
  EXPECT_EQ(c.rawT, 5);
  EXPECT_EQ(c.rawZ, 0);
  EXPECT_EQ(c.capped, (BoundaryConfig{3, 0}));

  w.clear();
  w.attachSites({{0, 0, 1}, {0, 0, -1}});
  c = w.sim.boundaryCounts(SiteCoord{0, 0, 0});
  EXPECT_EQ(c.rawT, 0);
  EXPECT_EQ(c.rawZ, 2);
  EXPECT_EQ(c.capped, (BoundaryConfig{0, 1}));

  EXPECT_THROW(w.sim.boundaryCounts(SiteCoord{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(w.sim.boundaryCounts(SiteCoord{4, 0, 0}), std::invalid_argument);
}

TEST(Engine, CanonicalSeedBoundaryConfigs) {
  Bench w;
  EXPECT_EQ(w.sim.boundaryCounts(SiteCoord{3, 0, 0}).capped, (BoundaryConfig{1, 0}));
  EXPECT_EQ(w.sim.boundaryCounts(SiteCoord{2, 1, 0}).capped, (BoundaryConfig{2, 0}));
  EXPECT_EQ(w.sim.boundaryCounts(SiteCoord{0, 0, 1}).capped, (BoundaryConfig{0, 1}));
  EXPECT_EQ(w.sim.boundarySites().size(), 18u + 2u * 19u);
}

TEST(Engine, FreezeArithmetic) {
  Bench w;
  w.clear();
  w.attachSites({{0, 0, 0}});
  w.d({1, 0, 0}) = 0.2;
  w.d({3, 0, 0}) = 0.2;
  w.sim.freeze();
  EXPECT_DOUBLE_EQ(w.b({1, 0, 0}), 0.18);
  EXPECT_DOUBLE_EQ(w.d({1, 0, 0}), 0.02);
  EXPECT_EQ(w.b({3, 0, 0}), 0.0);
  EXPECT_EQ(w.d({3, 0, 0}), 0.2);

  ModelParams p = fig4Params();
  p.kappa = ConfigTable(1.0);
  Bench keep(p);
  const SimState before = keep.sim.state();
  keep.sim.freeze();
  EXPECT_EQ(keep.sim.state(), before);
}

TEST(Engine, AttachThresholds) {
  Bench w;
  w.d({0, 0, 1}) = 0.3;
  w.b({0, 0, 1}) = 2.5;
  w.b({3, 0, 0}) = 2.0 - 1e-9;
  const auto joined = w.sim.attach();
  ASSERT_EQ(joined.size(), 1u);
  EXPECT_EQ(joined[0], w.at({0, 0, 1}));
  EXPECT_TRUE(w.sim.isAttached({0, 0, 1}));
  EXPECT_DOUBLE_EQ(w.b({0, 0, 1}), 2.8);
  EXPECT_EQ(w.d({0, 0, 1}), 0.0);
  EXPECT_FALSE(w.sim.isAttached({3, 0, 0}));
  EXPECT_TRUE(w.sim.isBoundary(w.at({0, 0, 2})));
  EXPECT_FALSE(w.sim.isBoundary(w.at({0, 0, 1})));
}

TEST(Engine, AttachFillsHolesUsingRawCounts) {
  Bench w;
  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, -1}});
  w.b({0, 0, 0}) = 0.05;
  w.d({0, 0, 0}) = 0.01;
  const auto joined = w.sim.attach();
  ASSERT_EQ(joined.size(), 1u);
  EXPECT_DOUBLE_EQ(w.b({0, 0, 0}), 0.06);

  // Three T-neighbors do not trigger the fill even with both Z-neighbors.
  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}});
  w.b({0, 0, 0}) = 0.05;
  EXPECT_TRUE(w.sim.attach().empty());
}

TEST(Engine, AttachIsSynchronous) {
  Bench w;
  // (1,0,1) would see config 11 (beta 2) once (0,0,1) joins; before, it is 01 (beta 2.5).
  w.b({0, 0, 1}) = 2.5;
  w.b({1, 0, 1}) = 2.0;
  const auto joined = w.sim.attach();
  ASSERT_EQ(joined.size(), 1u);
  EXPECT_FALSE(w.sim.isAttached({1, 0, 1}));
}

TEST(Engine, RedistributeSplitsExcess) {
  ModelParams p = fig4Params();
  p.uniformVariant = true;
  Bench w(p);
  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}});
  w.b({0, 0, 0}) = 1.3;
  const auto joined = w.sim.attach();
  ASSERT_EQ(joined.size(), 1u);
  const double before = w.sim.totalMass();
  w.sim.redistribute(joined);
  EXPECT_EQ(w.b({0, 0, 0}), 1.0);
  for (SiteCoord n : {SiteCoord{0, -1, 0}, SiteCoord{1, -1, 0}, SiteCoord{-1, 1, 0}}) {
    EXPECT_NEAR(w.b(n), 0.1, 1e-15);
  }
  EXPECT_NEAR(w.sim.totalMass(), before, 1e-13);
}

TEST(Engine, RedistributeUnitMassAndEnclosedSites) {
  ModelParams p = fig4Params();
  p.uniformVariant = true;
  Bench w(p);
  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}});
  w.b({0, 0, 0}) = 1.0;
  auto joined = w.sim.attach();
  ASSERT_EQ(joined.size(), 1u);
  w.sim.redistribute(joined);
  EXPECT_EQ(w.b({0, -1, 0}), 0.0);

  // A site with no unattached neighbor keeps its excess.
  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {1, -1, 0}, {-1, 1, 0},
                 {0, 0, 1}, {0, 0, -1}});
  w.b({0, 0, 0}) = 1.7;
  joined = w.sim.attach();
  ASSERT_EQ(joined.size(), 1u);
  w.sim.redistribute(joined);
  EXPECT_EQ(w.b({0, 0, 0}), 1.7);
}

TEST(Engine, UniformVariantHoleThreshold) {
  ModelParams p = fig4Params();
  p.uniformVariant = true;
  Bench w(p);
  w.clear();
  w.attachSites({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, -1}});
  w.b({0, 0, 0}) = 0.99;
  EXPECT_TRUE(w.sim.attach().empty());
  w.b({0, 0, 0}) = 1.0;
  EXPECT_EQ(w.sim.attach().size(), 1u);
}

TEST(Engine, MeltArithmetic) {
  Bench w;
  w.b({3, 0, 0}) = 1;
  w.d({3, 0, 0}) = 0;
  w.sim.melt();
  EXPECT_DOUBLE_EQ(w.b({3, 0, 0}), 0.999);
  EXPECT_DOUBLE_EQ(w.d({3, 0, 0}), 0.001);
  EXPECT_EQ(w.b({0, 0, 0}), 1.0);

  ModelParams p = fig4Params();
  p.mu = ConfigTable(0.0);
  Bench none(p);
  none.b({3, 0, 0}) = 0.7;
  const SimState before = none.sim.state();
  none.sim.melt();
  EXPECT_EQ(none.sim.state(), before);
}

TEST(Engine, CycleConservesMassAndGrowsMonotonically) {
  Simulation sim(Domain{12, 5, FoldMode::Full}, single(fig4Params()), SeedSpec{});
  const double m0 = sim.state().initialMass;
  auto prev = sim.state().attached;
  for (int t = 0; t < 200; ++t) {
    sim.cycle();
    const auto& st = sim.state();
    for (std::size_t i = 0; i < st.attached.size(); ++i) {
      if (prev[i]) ASSERT_TRUE(st.attached[i]);
      if (st.attached[i]) ASSERT_EQ(st.diffusiveMass[i], 0.0);
    }
    prev = st.attached;
    ASSERT_NEAR(sim.totalMass(), m0, 1e-12 * m0);
  }
  EXPECT_EQ(sim.state().time, 200);
  EXPECT_GT(sim.crystalRadii()[0], 2);
}

TEST(Engine, NoiseFieldStatistics) {
  const NoiseField a(7, 0.25);
  const NoiseField b(8, 0.25);
  int ones = 0;
  int differ = 0;
  int n = 0;
  for (int t = 0; t < 20; ++t) {
    for (int u = -15; u <= 15; ++u) {
      for (int v = -15; v <= 15; ++v) {
        const SiteCoord s{u, v, t % 5 - 2};
        ones += a.bit(t, s);
        differ += a.bit(t, s) != b.bit(t, s);
        EXPECT_EQ(a.bit(t, s), NoiseField(7, 0.25).bit(t, s));
        const double xi = a(t, s);
        EXPECT_TRUE(xi == 0.0 || xi == 0.25);
        ++n;
      }
    }
  }
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 0.02);
  EXPECT_NEAR(static_cast<double>(differ) / n, 0.5, 0.02);
}

TEST(Engine, NoiseWithZeroXiMatchesDeterministic) {
  Bench plain;
  Bench noisy;
  const std::vector<double> zero(plain.sim.lattice().size(), 0.0);
  for (int t = 0; t < 30; ++t) {
    plain.sim.diffuse();
    plain.sim.freeze();
    noisy.sim.diffuseNoisy(zero);
    noisy.sim.freezeNoisy(zero);
    plain.sim.attach();
    noisy.sim.attach();
    plain.sim.melt();
    noisy.sim.melt();
  }
  EXPECT_EQ(plain.sim.state(), noisy.sim.state());
}

TEST(Engine, ForcedNoiseDiffusion) {
  const double eps = 0.3;
  Bench w;
  w.clear();
  w.attachSites({{0, 0, 0}});
  w.d({1, 0, 0}) = 0.9;
  w.d({2, 0, 0}) = 0.5;
  w.d({1, 0, 1}) = 0.2;
  const auto before = w.sim.state().diffusiveMass;

  // Oracle: diffuse (1 - eps) d on a copy, then add back eps d off the crystal.
  Bench o;
  o.clear();
  o.attachSites({{0, 0, 0}});
  auto& od = o.sim.mutableState().diffusiveMass;
  for (std::size_t i = 0; i < od.size(); ++i) od[i] = (1.0 - eps) * before[i];
  o.sim.diffuse();
  for (std::size_t i = 0; i < od.size(); ++i) {
    if (!o.sim.state().attached[i]) od[i] = od[i] + eps * before[i];
  }

  const std::vector<double> xi(before.size(), eps);
  const double m0 = w.sim.totalMass();
  w.sim.diffuseNoisy(xi);
  EXPECT_EQ(w.sim.state().diffusiveMass, od);
  EXPECT_NEAR(w.sim.totalMass(), m0, 1e-14);
}

TEST(Engine, ForcedNoiseFreeze) {
  Bench w;
  w.clear();
  w.attachSites({{0, 0, 0}});
  w.d({1, 0, 0}) = 0.2;
  std::vector<double> xi(w.sim.lattice().size(), 0.0);
  xi[w.at({1, 0, 0})] = 0.5;
  w.sim.freezeNoisy(xi);
  // mobile 0.1: 0.09 freezes, 0.01 stays mobile, 0.1 is held back.
  EXPECT_DOUBLE_EQ(w.b({1, 0, 0}), 0.09);
  EXPECT_DOUBLE_EQ(w.d({1, 0, 0}), 0.11);
}

TEST(Engine, NoisyRunsAreReproducible) {
  ModelParams p = fig4Params();
  p.epsilon = 0.2;
  p.rngSeed = 99;
  Simulation a(Domain{8, 3, FoldMode::Full}, single(p), SeedSpec{});
  Simulation b(Domain{8, 3, FoldMode::Full}, single(p), SeedSpec{});
  for (int t = 0; t < 60; ++t) {
    a.cycle();
    b.cycle();
  }
  EXPECT_EQ(a.state(), b.state());
  EXPECT_NEAR(a.totalMass(), a.state().initialMass, 1e-12 * a.state().initialMass);
}

TEST(Engine, ThreadCountDoesNotChangeBits) {
  ModelParams p = fig4Params();
  p.phi = 0.02;
  Simulation one(Domain{10, 4, FoldMode::Full}, single(p), SeedSpec{});
  Simulation four(Domain{10, 4, FoldMode::Full}, single(p), SeedSpec{});
  four.setThreads(4);
  for (int t = 0; t < 60; ++t) {
    one.cycle();
    four.cycle();
  }
  EXPECT_EQ(one.state(), four.state());
}

TEST(Engine, FoldedModesMatchFull) {
  Simulation full(Domain{10, 4, FoldMode::Full}, single(fig4Params()), SeedSpec{});
  Simulation folded(Domain{10, 4, FoldMode::Fold24}, single(fig4Params()), SeedSpec{});
  for (int t = 0; t < 120; ++t) {
    full.cycle();
    folded.cycle();
  }
  const auto& L = folded.lattice();
  EXPECT_EQ(unfoldField<std::uint8_t>(folded.state().attached, L), full.state().attached);
  EXPECT_EQ(unfoldField<double>(folded.state().boundaryMass, L), full.state().boundaryMass);
  EXPECT_EQ(unfoldField<double>(folded.state().diffusiveMass, L), full.state().diffusiveMass);

  ModelParams p = fig4Params();
  p.phi = 0.01;
  const SeedSpec prism{SeedKind::Prism, 1, 2, 3};
  Simulation full12(Domain{10, 5, FoldMode::Full}, single(p), prism);
  Simulation fold12(Domain{10, 5, FoldMode::Fold12}, single(p), prism);
  for (int t = 0; t < 120; ++t) {
    full12.cycle();
    fold12.cycle();
  }
  const auto& L12 = fold12.lattice();
  EXPECT_EQ(unfoldField<std::uint8_t>(fold12.state().attached, L12), full12.state().attached);
  EXPECT_EQ(unfoldField<double>(fold12.state().diffusiveMass, L12), full12.state().diffusiveMass);
}

TEST(Engine, DriftRejectsFold24) {
  ModelParams p = fig4Params();
  p.phi = 0.01;
  EXPECT_THROW(Simulation(Domain{8, 3, FoldMode::Fold24}, single(p), SeedSpec{}),
               std::invalid_argument);
}

TEST(Engine, ScheduleSwitchAtStageStart) {
  ParamSchedule s = single(fig4Params());
  ModelParams second = fig4Params();
  second.beta = ConfigTable(1.5);
  second.kappa = ConfigTable(0.2);
  second.phi = 0.01;
  second.rho = 0.5;
  s.stages.push_back({8000, second});
  Simulation sim(Domain{6, 3, FoldMode::Full}, s, SeedSpec{});
  sim.mutableState().time = 7999;
  sim.cycle();
  EXPECT_EQ(sim.params().beta, fig4Params().beta);
  EXPECT_EQ(sim.state().stage, 0u);
  sim.cycle();
  EXPECT_EQ(sim.state().stage, 1u);
  EXPECT_EQ(sim.params().beta, second.beta);
  EXPECT_EQ(sim.params().phi, 0.01);
  EXPECT_EQ(sim.params().rho, 0.1);
}

TEST(Engine, StopCriteria) {
  Bench w(fig4Params(), 10, 4);
  StopCriteria c;
  c.maxTime = 100;
  EXPECT_EQ(w.sim.checkStop(c), StopReason::Continue);
  EXPECT_NEAR(w.sim.edgeDensity(), 0.1, 1e-12);

  w.sim.mutableState().time = 100;
  EXPECT_EQ(w.sim.checkStop(c), StopReason::MaxTime);
  w.sim.mutableState().time = 0;

  // ceil(0.8 * 10) + 1 = 9.
  w.attachSites({{9, 0, 0}});
  EXPECT_EQ(w.sim.checkStop(c), StopReason::Radius);
  w.sim.mutableState().attached[w.at({9, 0, 0})] = 0;
  w.sim.refreshBoundary();
  w.attachSites({{8, 0, 0}});
  EXPECT_EQ(w.sim.checkStop(c), StopReason::Continue);

  auto& st = w.sim.mutableState();
  const auto& L = w.sim.lattice();
  for (std::size_t i = 0; i < L.size(); ++i) {
    const SiteCoord s = L.coord(i);
    if (hexDistanceToAxis(s) == 10 || std::abs(s.z) == 4) st.diffusiveMass[i] = 0.06;
  }
  EXPECT_NEAR(w.sim.edgeDensity(), 0.06, 1e-15);
  EXPECT_EQ(w.sim.checkStop(c), StopReason::EdgeDensity);
  EXPECT_EQ(stopReasonName(StopReason::EdgeDensity), "edge_density");
}
