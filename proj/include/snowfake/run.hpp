#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "snowfake/analysis.hpp"
#include "snowfake/engine.hpp"
#include "snowfake/model.hpp"

namespace snowfake {

struct RunHooks {
  std::function<void(const MetricsSample&)> onMetrics;
  std::function<void(const Simulation&)> onCheckpoint;
};

struct RunResult {
  StopReason reason = StopReason::Continue;
  SimState finalState;
  std::vector<MetricsSample> trace;
};

/// Drives `sim` until a stop criterion fires. Metric samples are taken every
/// outputs.metricsEvery cycles and at the end; checkpoints every
/// outputs.checkpointEvery cycles and at the end. With `sampleStart` false
/// no sample is taken at the starting time (used when resuming).
RunResult runSimulation(Simulation& sim, const RunConfig& config, const RunHooks& hooks = {},
                        bool sampleStart = true);

/// Builds the seed state from `config` and runs it.
RunResult run(const RunConfig& config, const RunHooks& hooks = {}, int threads = 1);

/// Throws std::invalid_argument on a config that cannot run: bad schedule,
/// parameter range errors, or a seed that does not fit the domain.
void checkRunnable(const RunConfig& config);

}  // namespace snowfake
