// snowfake: run, resume and export three-dimensional snowfake simulations.
//
// Machine-readable results go to stdout as key=value lines; diagnostics go
// to stderr. Exit status: 0 success, 1 runtime failure, 2 bad input
// (usage, config, unknown preset, missing or damaged checkpoint).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "snowfake/checkpoint.hpp"
#include "snowfake/config.hpp"
#include "snowfake/mesh.hpp"
#include "snowfake/metrics_csv.hpp"
#include "snowfake/presets.hpp"
#include "snowfake/raster.hpp"
#include "snowfake/run.hpp"

namespace fs = std::filesystem;
using namespace snowfake;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExportFlags {
  bool obj = false;
  bool pov = false;
  bool heightmap = false;
  bool smooth = false;
  int pixelsPerUnit = 4;

  bool any() const { return obj || pov || heightmap; }
};

struct Options {
  std::string preset;
  std::string configPath;
  std::string checkpointPath;
  std::vector<std::string> sets;
  std::optional<std::int64_t> maxTime;
  std::optional<int> radius;
  std::optional<int> halfHeight;
  std::optional<std::string> fold;
  std::optional<std::int64_t> checkpointEvery;
  std::optional<std::int64_t> metricsEvery;
  std::optional<std::string> outDir;
  int threads = 1;
  ExportFlags exports;
};

std::string readFile(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void addExportFlags(CLI::App* cmd, ExportFlags& e) {
  cmd->add_flag("--obj", e.obj, "Write the crystal surface as Wavefront OBJ");
  cmd->add_flag("--pov", e.pov, "Write the crystal surface as a POV-Ray mesh2 include");
  cmd->add_flag("--heightmap", e.heightmap, "Write a top-view PGM heightmap");
  cmd->add_flag("--smooth", e.smooth, "Smooth the rendered cell set before meshing");
  cmd->add_option("--pixels-per-unit", e.pixelsPerUnit, "Heightmap resolution")
      ->check(CLI::PositiveNumber);
}

void addOutputOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--set", o.sets, "Override a config key (key=value), repeatable");
  cmd->add_option("--max-time", o.maxTime, "Stop at this time");
  cmd->add_option("--checkpoint-every", o.checkpointEvery, "Checkpoint period (0: final only)");
  cmd->add_option("--metrics-every", o.metricsEvery, "Metric sample period (0: none)");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", o.outDir, "Output directory");
  addExportFlags(cmd, o.exports);
}

void applyOutputOptions(RunConfig& c, const Options& o) {
  if (o.maxTime) c.stop.maxTime = *o.maxTime;
  if (o.checkpointEvery) c.outputs.checkpointEvery = *o.checkpointEvery;
  if (o.metricsEvery) c.outputs.metricsEvery = *o.metricsEvery;
  if (o.outDir) c.outputs.directory = *o.outDir;
}

void writeExports(const Lattice& lattice, const SimState& state, const fs::path& stem,
                  const ExportFlags& e) {
  if (e.obj || e.pov) {
    bool empty = true;
    for (auto a : state.attached) empty = empty && !a;
    if (empty) throw std::runtime_error("the crystal is empty; nothing to mesh");
    const BoundaryMesh mesh = buildMesh(lattice, state, e.smooth);
    std::cout << "mesh_cells=" << mesh.cellCount << "\n"
              << "mesh_vertices=" << mesh.vertices.size() << "\n"
              << "mesh_triangles=" << mesh.triangles.size() << "\n";
    if (e.obj) {
      const fs::path p = stem.string() + ".obj";
      exportObj(mesh, p);
      std::cout << "obj=" << p.string() << "\n";
    }
    if (e.pov) {
      const fs::path p = stem.string() + ".pov";
      exportPovMesh2(mesh, p);
      std::cout << "pov=" << p.string() << "\n";
    }
  }
  if (e.heightmap) {
    const fs::path p = stem.string() + ".pgm";
    const GrayImage img = renderHeightmap(lattice, state, e.pixelsPerUnit);
    writePgm(img, p);
    std::cout << "heightmap=" << p.string() << "\n"
              << "heightmap_size=" << img.width << "x" << img.height << "\n";
  }
}

void reportWarnings(const RunConfig& c) {
  for (std::size_t i = 0; i < c.schedule.stages.size(); ++i) {
    for (const auto& v : validateParams(c.schedule.stages[i].params)) {
      if (v.severity == Severity::Warning) {
        std::cerr << "warning: stage " << i << ": " << v.message << "\n";
      }
    }
  }
}

// Runs `sim` under `config`, writing metrics, checkpoints and exports.
int drive(Simulation& sim, const RunConfig& config, const Options& o, bool resumed) {
  const fs::path dir = config.outputs.directory;
  fs::create_directories(dir);
  const fs::path stem = dir / config.outputs.name;

  std::ofstream csv;
  const fs::path csvPath = stem.string() + ".csv";
  if (config.outputs.metricsEvery > 0) {
    const bool append = resumed && fs::exists(csvPath);
    csv.open(csvPath, append ? std::ios::app : std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + csvPath.string());
    if (!append) writeMetricsHeader(csv, config);
  }

  RunHooks hooks;
  if (csv.is_open()) hooks.onMetrics = [&](const MetricsSample& m) { writeMetricsRow(csv, m); };
  fs::path lastCheckpoint;
  hooks.onCheckpoint = [&](const Simulation& s) {
    const std::int64_t t = s.state().time;
    const bool periodic = config.outputs.checkpointEvery > 0 &&
                          t % config.outputs.checkpointEvery == 0;
    lastCheckpoint = stem.string() + ".ckpt";
    writeCheckpoint(lastCheckpoint, config, s.state());
    if (periodic) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ".t%09lld.ckpt", static_cast<long long>(t));
      writeCheckpoint(stem.string() + buf, config, s.state());
    }
  };

  const RunResult result = runSimulation(sim, config, hooks, !resumed);
  const auto r = sim.crystalRadii();
  std::cout << "stop_reason=" << stopReasonName(result.reason) << "\n"
            << "t=" << sim.state().time << "\n"
            << "rT=" << r[0] << "\n"
            << "rZ=" << r[1] << "\n"
            << "checkpoint=" << lastCheckpoint.string() << "\n";
  if (csv.is_open()) std::cout << "metrics=" << csvPath.string() << "\n";
  writeExports(sim.lattice(), sim.state(), stem, o.exports);
  return 0;
}

int cmdRun(const Options& o) {
  if (o.preset.empty() == o.configPath.empty()) {
    throw UsageError("run needs exactly one of --preset or --config");
  }
  RunConfig config;
  if (!o.preset.empty()) {
    const auto p = findPreset(o.preset);
    if (!p) throw UsageError("unknown preset '" + o.preset + "' (see `snowfake presets`)");
    config = p->config;
  } else {
    config = parseRunConfig(readFile(o.configPath));
  }
  for (const auto& s : o.sets) applyOverride(config, s);
  if (o.radius) config.domain.radius = *o.radius;
  if (o.halfHeight) config.domain.halfHeight = *o.halfHeight;
  if (o.fold) config.domain.mode = parseFoldMode(*o.fold);
  applyOutputOptions(config, o);
  try {
    checkRunnable(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  reportWarnings(config);

  Simulation sim(config.domain, config.schedule, config.seed);
  sim.setThreads(o.threads);
  return drive(sim, config, o, false);
}

int cmdResume(const Options& o) {
  if (!fs::exists(o.checkpointPath)) throw UsageError("no such checkpoint: " + o.checkpointPath);
  Checkpoint cp = readCheckpoint(o.checkpointPath);
  RunConfig config = cp.config;
  for (const auto& s : o.sets) {
    RunConfig probe = config;
    applyOverride(probe, s);
    probe.stop = config.stop;
    probe.outputs = config.outputs;
    if (!(probe == config)) {
      throw UsageError("resume only accepts stop and output overrides, not '" + s + "'");
    }
    applyOverride(config, s);
  }
  applyOutputOptions(config, o);
  Simulation sim(std::make_shared<const Lattice>(config.domain), config.schedule,
                 std::move(cp.state));
  sim.setThreads(o.threads);
  return drive(sim, config, o, true);
}

int cmdExport(const Options& o) {
  if (!o.exports.any()) throw UsageError("export needs at least one of --obj, --pov, --heightmap");
  if (!fs::exists(o.checkpointPath)) throw UsageError("no such checkpoint: " + o.checkpointPath);
  const Checkpoint cp = readCheckpoint(o.checkpointPath);
  const Lattice lattice(cp.config.domain);
  if (cp.state.attached.size() != lattice.size()) {
    throw CheckpointError("checkpoint field size does not match its domain");
  }
  fs::path stem = fs::path(o.checkpointPath).replace_extension();
  if (o.outDir) {
    fs::create_directories(*o.outDir);
    stem = fs::path(*o.outDir) / stem.filename();
  }
  std::cout << "t=" << cp.state.time << "\n";
  writeExports(lattice, cp.state, stem, o.exports);
  return 0;
}

int cmdPresets() {
  for (const auto& p : presets()) {
    const RunConfig& c = p.config;
    std::cout << "preset=" << p.name << " figure=\"" << p.figure << "\" fold="
              << foldModeName(c.domain.mode) << " radius=" << c.domain.radius
              << " half_height=" << c.domain.halfHeight
              << " domain=" << (p.paperDomain ? "paper" : "chosen") << " max_time=" << c.stop.maxTime
              << " max_time_source=" << (p.paperMaxTime ? "paper" : "chosen")
              << " stages=" << c.schedule.stages.size() << " description=\"" << p.description
              << "\"\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-dimensional snowfake growth simulator"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run a preset or config file");
  run->add_option("--preset", o.preset, "Published parameter set (see `presets`)");
  run->add_option("--config", o.configPath, "Run-config file");
  run->add_option("--radius", o.radius, "Domain radius R");
  run->add_option("--half-height", o.halfHeight, "Domain half height H");
  run->add_option("--fold", o.fold, "Symmetry folding: full, 24 or 12");
  addOutputOptions(run, o);

  auto* resume = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume->add_option("checkpoint", o.checkpointPath, "Checkpoint file")->required();
  addOutputOptions(resume, o);

  auto* exp = app.add_subcommand("export", "Export a checkpoint as mesh or heightmap");
  exp->add_option("checkpoint", o.checkpointPath, "Checkpoint file")->required();
  exp->add_option("--out-dir", o.outDir, "Output directory (default: beside the checkpoint)");
  addExportFlags(exp, o.exports);

  app.add_subcommand("presets", "List the published parameter sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmdRun(o);
    if (resume->parsed()) return cmdResume(o);
    if (exp->parsed()) return cmdExport(o);
    return cmdPresets();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
