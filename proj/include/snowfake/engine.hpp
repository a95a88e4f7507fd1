#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "snowfake/lattice.hpp"
#include "snowfake/model.hpp"

namespace snowfake {

/// Fields of every stored site plus the clock. In folded modes the vectors
/// hold one entry per orbit representative (see Lattice).
struct SimState {
  std::int64_t time = 0;
  std::size_t stage = 0;
  double initialMass = 0;
  std::vector<std::uint8_t> attached;
  std::vector<double> boundaryMass;
  std::vector<double> diffusiveMass;

  friend bool operator==(const SimState&, const SimState&) = default;
};

/// Seed sites get a=1, b=1, d=0; every other site a=0, b=0, d=rho.
/// Throws std::invalid_argument when the seed does not fit the domain or
/// lacks the symmetry the fold mode needs.
SimState buildSeedState(const SeedSpec& seed, const Lattice& lattice, const ModelParams& p);

/// Per-site noise xi_t(x) in {0, epsilon}, each with probability 1/2,
/// derived from a counter-based hash of (seed, t, site).
class NoiseField {
 public:
  NoiseField(std::uint64_t seed, double epsilon) : seed_(seed), epsilon_(epsilon) {}

  bool bit(std::int64_t t, SiteCoord s) const;
  double operator()(std::int64_t t, SiteCoord s) const { return bit(t, s) ? epsilon_ : 0.0; }
  /// xi for every stored site of `lattice` (representative coordinates).
  std::vector<double> sample(const Lattice& lattice, std::int64_t t) const;

 private:
  std::uint64_t seed_;
  double epsilon_;
};

struct BoundaryCounts {
  int rawT = 0;
  int rawZ = 0;
  BoundaryConfig capped;
};

enum class StopReason { Continue, EdgeDensity, Radius, MaxTime };

std::string_view stopReasonName(StopReason r);

/// The update cycle on a (possibly folded) domain.
///
/// Each diffusion substep reads one buffer and writes the other, so any
/// thread count yields the same bits. Boundary substeps (freeze, attach,
/// melt) run sequentially over the sorted boundary list.
class Simulation {
 public:
  Simulation(const Domain& domain, ParamSchedule schedule, const SeedSpec& seed);
  Simulation(std::shared_ptr<const Lattice> lattice, ParamSchedule schedule, SimState state);

  const Lattice& lattice() const { return *lattice_; }
  std::shared_ptr<const Lattice> sharedLattice() const { return lattice_; }
  const SimState& state() const { return state_; }
  const ParamSchedule& schedule() const { return schedule_; }
  /// Parameters of the current stage, with rho pinned to the initial value.
  const ModelParams& params() const { return active_; }
  double initialRho() const { return schedule_.initial().rho; }

  void setThreads(int threads) { threads_ = threads < 1 ? 1 : threads; }
  int threads() const { return threads_; }

  /// Direct field access for hand-built configurations. Call
  /// refreshBoundary() after changing attachment flags.
  SimState& mutableState() { return state_; }
  void refreshBoundary();

  std::span<const std::uint32_t> boundarySites() const { return boundary_; }
  bool isBoundary(std::size_t site) const { return isBoundary_[site] != 0; }
  bool isAttached(SiteCoord s) const { return state_.attached[lattice_->indexOf(s)] != 0; }

  /// Throws std::invalid_argument unless `site` is on the crystal boundary.
  BoundaryCounts boundaryCounts(std::size_t site) const;
  BoundaryCounts boundaryCounts(SiteCoord s) const { return boundaryCounts(lattice_->indexOf(s)); }

  // Substeps, in cycle order.
  void diffuseT();
  void diffuseZ();
  void drift();
  /// diffuseT, diffuseZ and (when phi > 0) drift.
  void diffuse();
  /// Diffusion where fraction xi of each site's vapor refuses to move.
  void diffuseNoisy(std::span<const double> xi);
  void freeze();
  void freezeNoisy(std::span<const double> xi);
  /// Returns the newly attached sites in index order. Updates the boundary.
  std::vector<std::uint32_t> attach();
  /// Uniform variant: spreads b-1 of each new crystal site over its
  /// unattached neighbors.
  void redistribute(std::span<const std::uint32_t> newlyAttached);
  void melt();

  /// One full time step: schedule switch, diffusion, freezing, attachment
  /// (+ redistribution), melting.
  void cycle();

  double totalMass() const;
  /// Orbit-weighted mean vapor over unattached sites of the outer shell.
  double edgeDensity() const;
  /// (max hex distance, max |z|) over the crystal.
  std::array<int, 2> crystalRadii() const { return {radiusT_, radiusZ_}; }

  StopReason checkStop(const StopCriteria& c) const;

 private:
  void init();
  void applyStage();
  void addNewBoundary(std::span<const std::uint32_t> newlyAttached);
  void noteRadius(std::size_t site);

  std::shared_ptr<const Lattice> lattice_;
  ParamSchedule schedule_;
  ModelParams active_;
  SimState state_;
  int threads_ = 1;

  std::vector<std::uint32_t> boundary_;
  std::vector<std::uint8_t> isBoundary_;
  std::vector<std::uint32_t> shell_;
  std::vector<double> scratch_;
  std::vector<double> share_;
  int radiusT_ = 0;
  int radiusZ_ = 0;
};

/// Pairwise sum of f(i) for i in [begin, end). The reduction tree
/// depends only on the range length.
template <typename F>
double pairwiseSum(std::size_t begin, std::size_t end, const F& f) {
  if (end - begin <= 64) {
    double s = 0;
    for (std::size_t i = begin; i < end; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwiseSum(begin, mid, f) + pairwiseSum(mid, end, f);
}

/// Sum of the three opposite-pair sums of a T-neighborhood, smallest first.
/// Every lattice symmetry maps opposite pairs to opposite pairs, so the
/// result does not depend on how the symmetry permutes them.
inline double planePairSum(double p0, double p1, double p2) {
  if (p1 < p0) std::swap(p0, p1);
  if (p2 < p1) std::swap(p1, p2);
  if (p1 < p0) std::swap(p0, p1);
  return (p0 + p1) + p2;
}

inline double planeAverage(double center, double p0, double p1, double p2) {
  return (center + planePairSum(p0, p1, p2)) / 7.0;
}

inline constexpr double kZCenterWeight = 4.0 / 7.0;
inline constexpr double kZNeighborWeight = 3.0 / 14.0;

}  // namespace snowfake
