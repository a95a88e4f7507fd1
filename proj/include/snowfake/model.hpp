#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "snowfake/lattice.hpp"

namespace snowfake {

struct CellState {
  bool attached = false;
  double boundaryMass = 0;
  double diffusiveMass = 0;
};

/// Capped neighbor counts (nT, nZ) that index the parameter vectors.
struct BoundaryConfig {
  int nT = 0;  // 0..3
  int nZ = 0;  // 0..1

  bool valid() const { return nT >= 0 && nT <= 3 && nZ >= 0 && nZ <= 1 && (nT + nZ) > 0; }
  /// Slot in a ConfigTable: 01, 10, 20, 30, 11, 21, 31.
  std::size_t slot() const;
  std::string name() const;

  friend bool operator==(const BoundaryConfig&, const BoundaryConfig&) = default;
};

inline constexpr std::array<BoundaryConfig, 7> kBoundaryConfigs{{
    {0, 1}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}, {3, 1}}};

BoundaryConfig capConfig(int rawT, int rawZ);

/// One value per valid boundary configuration, stored in kBoundaryConfigs order.
class ConfigTable {
 public:
  ConfigTable() = default;
  explicit ConfigTable(double all) { values_.fill(all); }
  explicit ConfigTable(const std::array<double, 7>& values) : values_(values) {}

  double operator[](BoundaryConfig c) const { return values_[c.slot()]; }
  double& operator[](BoundaryConfig c) { return values_[c.slot()]; }
  double at(int nT, int nZ) const { return (*this)[BoundaryConfig{nT, nZ}]; }
  double& at(int nT, int nZ) { return (*this)[BoundaryConfig{nT, nZ}]; }
  const std::array<double, 7>& values() const { return values_; }

  friend bool operator==(const ConfigTable&, const ConfigTable&) = default;

 private:
  std::array<double, 7> values_{};
};

struct ModelParams {
  ConfigTable beta;
  ConfigTable kappa;
  ConfigTable mu;
  double rho = 0.1;
  double phi = 0;
  double epsilon = 0;
  bool uniformVariant = false;
  std::uint64_t rngSeed = 1;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class Severity { Warning, Error };

struct ParamViolation {
  Severity severity = Severity::Error;
  std::string message;
};

/// Range checks are errors; coordinate monotonicity of beta/kappa/mu is
/// reported as a warning because several published sets break it.
std::vector<ParamViolation> validateParams(const ModelParams& p);
bool hasErrors(const std::vector<ParamViolation>& violations);

/// True when the extremal points cannot expand at light speed:
/// (1-kappa01) rho < beta01 and (1-kappa10) rho < beta10.
bool packardLint(const ModelParams& p);
/// Sufficient condition for continual growth:
/// mu01 beta01 < (1-kappa01) rho and mu10 beta10 < (1-kappa10) rho.
bool growthLint(const ModelParams& p);

enum class SeedKind { Canonical, Prism };

struct SeedSpec {
  SeedKind kind = SeedKind::Canonical;
  int hexRadiusTop = 2;
  int hexRadiusBottom = 2;
  int height = 1;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Graph-ball radius of each seed layer, bottom to top.
std::vector<int> seedLayerRadii(const SeedSpec& seed);
/// Lowest seed layer; seeds are centred on z = 0.
int seedBottomZ(const SeedSpec& seed);
std::vector<SiteCoord> seedSites(const SeedSpec& seed);

struct ScheduleStage {
  std::int64_t startTime = 0;
  ModelParams params;

  friend bool operator==(const ScheduleStage&, const ScheduleStage&) = default;
};

/// Parameter stages in time order. rho of later stages is ignored: the
/// vapor field persists across a switch.
struct ParamSchedule {
  std::vector<ScheduleStage> stages;

  /// Throws std::invalid_argument unless the first stage starts at 0 and
  /// start times strictly increase.
  void check() const;
  std::size_t stageAt(std::int64_t t) const;
  const ModelParams& initial() const { return stages.front().params; }

  friend bool operator==(const ParamSchedule&, const ParamSchedule&) = default;
};

struct StopCriteria {
  double edgeDensityFraction = 2.0 / 3.0;
  double radiusFraction = 0.8;
  std::int64_t maxTime = 0;

  friend bool operator==(const StopCriteria&, const StopCriteria&) = default;
};

struct OutputPlan {
  std::int64_t checkpointEvery = 0;  // 0: final checkpoint only
  std::int64_t metricsEvery = 100;   // 0: no metric samples
  std::string directory = ".";
  std::string name = "run";

  friend bool operator==(const OutputPlan&, const OutputPlan&) = default;
};

struct RunConfig {
  Domain domain;
  SeedSpec seed;
  ParamSchedule schedule;
  StopCriteria stop;
  OutputPlan outputs;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Checks the seed fits the domain and, in folded modes, has the symmetry the
/// fold requires. Throws std::invalid_argument otherwise.
void checkSeedCompatible(const SeedSpec& seed, const Domain& d);

}  // namespace snowfake
