#include "snowfake/run.hpp"

#include <stdexcept>

namespace snowfake {

void checkRunnable(const RunConfig& config) {
  config.schedule.check();
  for (const auto& stage : config.schedule.stages) {
    for (const auto& v : validateParams(stage.params)) {
      if (v.severity == Severity::Error) throw std::invalid_argument(v.message);
    }
  }
  checkSeedCompatible(config.seed, config.domain);
}

RunResult runSimulation(Simulation& sim, const RunConfig& config, const RunHooks& hooks,
                        bool sampleStart) {
  RunResult result;
  const auto& out = config.outputs;
  std::int64_t lastSample = -1;
  std::int64_t lastCheckpoint = sampleStart ? -1 : sim.state().time;
  auto sample = [&] {
    const MetricsSample m = sampleMetrics(sim);
    result.trace.push_back(m);
    if (hooks.onMetrics) hooks.onMetrics(m);
    lastSample = sim.state().time;
  };
  if (sampleStart && out.metricsEvery > 0 && sim.state().time % out.metricsEvery == 0) sample();
  if (!sampleStart) lastSample = sim.state().time;

  while (true) {
    result.reason = sim.checkStop(config.stop);
    if (result.reason != StopReason::Continue) break;
    sim.cycle();
    const std::int64_t t = sim.state().time;
    if (out.metricsEvery > 0 && t % out.metricsEvery == 0) sample();
    if (out.checkpointEvery > 0 && t % out.checkpointEvery == 0 && hooks.onCheckpoint) {
      hooks.onCheckpoint(sim);
      lastCheckpoint = t;
    }
  }
  if (out.metricsEvery > 0 && lastSample != sim.state().time) sample();
  if (hooks.onCheckpoint && lastCheckpoint != sim.state().time) hooks.onCheckpoint(sim);
  result.finalState = sim.state();
  return result;
}

RunResult run(const RunConfig& config, const RunHooks& hooks, int threads) {
  checkRunnable(config);
  Simulation sim(config.domain, config.schedule, config.seed);
  sim.setThreads(threads);
  return runSimulation(sim, config, hooks);
}

}  // namespace snowfake
