#include "snowfake/presets.hpp"

#include <algorithm>
#include <set>

namespace snowfake {

namespace {

using Table = std::array<double, 7>;  // 01, 10, 20, 30, 11, 21, 31

ModelParams params(const Table& beta, const Table& kappa, const Table& mu, double rho,
                   double phi = 0) {
  ModelParams p;
  p.beta = ConfigTable(beta);
  p.kappa = ConfigTable(kappa);
  p.mu = ConfigTable(mu);
  p.rho = rho;
  p.phi = phi;
  return p;
}

Table all(double x) { return {x, x, x, x, x, x, x}; }

SeedSpec prism(int height, int top, int bottom) {
  return {SeedKind::Prism, top, bottom, height};
}

constexpr std::int64_t kLong = 200000;

struct Builder {
  std::vector<Preset> list;

  RunConfig& add(std::string name, std::string figure, std::string description,
                 const ModelParams& p, int radius, int halfHeight, std::int64_t maxTime,
                 SeedSpec seed = {}) {
    Preset preset;
    preset.name = std::move(name);
    preset.figure = std::move(figure);
    preset.description = std::move(description);
    RunConfig& c = preset.config;
    c.seed = seed;
    c.schedule.stages.push_back({0, p});
    c.domain = {radius, halfHeight, FoldMode::Full};
    c.stop.maxTime = maxTime;
    preset.paperMaxTime = maxTime != kLong;
    c.stop.edgeDensityFraction = 0.5;
    c.outputs.name = preset.name;
    list.push_back(std::move(preset));
    return list.back().config;
  }
};

const ModelParams kFig1 = params({2.8, 2.2, 2.2, 1, 1.6, 1.6, 1}, all(0.005),
                                 {0.0001, 0.001, 0.001, 0.0001, 0.0001, 0.0001, 0.0001},
                                 0.12, 0.01);
const ModelParams kFig4 = params({2.5, 2, 2, 1, 2, 1, 1}, all(0.1), all(0.001), 0.1);
const ModelParams kFern =
    params({1.6, 1.5, 1.5, 1, 1.4, 1, 1}, all(0.1), all(0.008), 0.105);
const ModelParams kFig28 =
    params({3.1, 1.05, 1.03, 1.02, 1.04, 1.01, 1}, all(0.01),
           {0.01, 0.03, 0.03, 0.01, 0.01, 0.01, 0.01}, 0.16, 0.005);
const ModelParams kHollowColumn = params({1, 2, 2, 0.5, 0.5, 0.5, 1}, all(0.1), all(0.01), 0.1);
const Table kSandwichKappa{0.5, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
const ModelParams kFig32 =
    params({3.5, 2.25, 2.25, 1, 2.25, 1, 1}, all(0.005), all(0.001), 0.12, 0.01);
const ModelParams kFig40 = params(all(1), {0.11, 0.1, 0.1, 0.05, 0.01, 0.01, 0.01},
                                  all(0.03), 0.06);
const ModelParams kFig43 = params({1.41, 1.2, 1.2, 1, 1, 1, 1}, all(0.1), all(0.025), 0.09);

ModelParams withRho(ModelParams p, double rho) {
  p.rho = rho;
  return p;
}

ModelParams withBeta01(ModelParams p, double beta01) {
  p.beta.at(0, 1) = beta01;
  return p;
}

std::vector<Preset> build() {
  Builder b;

  b.add("fig1-tip-instability", "Fig. 1", "Plate with ridged branches and tip sandwiching",
        kFig1, 300, 60, 21000);
  b.add("fig3-failed", "Fig. 3", "Faceting fails: stunted irregular growth",
        params({1.73, 1.34, 1.34, 1, 1, 1, 1}, all(0.1), all(0.001), 0.1), 200, 40, kLong);
  b.add("fig4", "Fig. 4", "Plate that sprouts sectored branches", kFig4, 450, 90, 70000);
  b.add("fig6-double-plate", "Fig. 6", "Fig. 4 dynamics from a two-layer prism seed", kFig4,
        300, 60, kLong, prism(3, 2, 2));

  b.add("fig7-rho015", "Fig. 7", "Fig. 4 at vapor density 0.15", withRho(kFig4, 0.15), 300, 60,
        kLong);
  b.add("fig8-rho009", "Fig. 8", "Fig. 4 at vapor density 0.09", withRho(kFig4, 0.09), 300, 60,
        kLong);
  b.add("fig9-sectored-plate", "Fig. 9", "Fig. 4 at vapor density 0.05", withRho(kFig4, 0.05),
        300, 60, kLong);
  b.add("fig10-sectored-branches", "Fig. 10", "Fig. 4 at vapor density 0.045",
        withRho(kFig4, 0.045), 300, 60, kLong);
  b.add("fig11-sandwich", "Fig. 11", "Fig. 4 at vapor density 0.4: sandwich instability",
        withRho(kFig4, 0.4), 200, 60, 120000);
  b.add("fig11-sandwich-rho004", "Fig. 11",
        "Fig. 11 read with vapor density 0.04 instead of the printed 0.4",
        withRho(kFig4, 0.04), 260, 60, 120000);

  b.add("fig13-fern", "Fig. 13", "Fernlike dendrite", kFern, 500, 40, kLong);
  b.add("fig14-dendrite", "Fig. 14", "Dendrite at vapor density 0.1", withRho(kFern, 0.1), 500,
        40, kLong);
  b.add("fig15-dendrite", "Fig. 15", "Dendrite at vapor density 0.095", withRho(kFern, 0.095),
        500, 40, kLong);
  b.add("fig16-stellar", "Fig. 16", "Dendrite at vapor density 0.09", withRho(kFern, 0.09), 500,
        40, kLong);
  b.add("fig17-tip-sandwich", "Fig. 17", "Dendrite at vapor density 0.082: tip sandwiching",
        withRho(kFern, 0.082), 400, 40, 60000);
  b.add("fig19-fattened", "Fig. 19", "Dendrite at vapor density 0.081: fattened sandwich",
        withRho(kFern, 0.081), 400, 40, kLong);

  b.add("fig20-sandwich-plate", "Fig. 20", "Sandwich plate",
        params({6, 2.5, 2.5, 1, 2, 1, 1}, kSandwichKappa, all(0.0001), 0.08), 300, 60, 100000);
  b.add("fig21-sandwich-ribs", "Fig. 21", "Sandwich plate with ribs",
        params({6.5, 2.7, 2.7, 1, 2, 1, 1}, kSandwichKappa, all(0.0001), 0.15), 300, 60, 36100);
  b.add("fig23-stunted-double", "Fig. 23", "Fig. 1 dynamics from an uneven prism seed", kFig1,
        300, 60, kLong, prism(5, 7, 3));

  const double fernMu[] = {0.005, 0.008, 0.009, 0.01};
  const char* fernNames[] = {"fig24-drift-mu005", "fig25-drift-mu008", "fig26-drift-mu009",
                             "fig27-drift-mu010"};
  for (int i = 0; i < 4; ++i) {
    const double m = fernMu[i];
    b.add(fernNames[i], "Fig. " + std::to_string(24 + i),
          "Drifting dendrite, mu10 = mu20 = " + std::to_string(m).substr(0, 5),
          params({3, 1.4, 1.4, 1, 1.4, 1, 1}, all(0.1), {0.002, m, m, 0.001, 0.001, 0.001, 0.001},
                 0.14, 0.01),
          300, 60, kLong, prism(3, 1, 2));
  }
  b.add("fig28-simple-star", "Fig. 28", "Simple star with drift", kFig28, 300, 60, kLong,
        prism(3, 1, 2));

  b.add("fig29-needle", "Fig. 29", "Needle",
        params({2, 4, 4, 1, 4, 1, 1}, all(0.1), all(0.001), 0.1), 60, 200, kLong);
  b.add("fig30-hollow-column", "Fig. 30", "Hollow column", kHollowColumn, 80, 160, kLong);
  b.add("fig31-hollow-facets", "Fig. 31", "Column with hollow prism facets",
        params({1.5, 1.6, 1.6, 1, 1, 1, 1}, all(0.1), all(0.015), 0.1), 120, 120, kLong);

  {
    RunConfig& c = b.add("fig32-plate-to-fern", "Fig. 32", "Plate switching to fern branches",
                         kFig32, 250, 60, kLong, prism(3, 2, 1));
    ModelParams p = kFig32;
    p.beta.at(1, 0) = p.beta.at(2, 0) = p.beta.at(1, 1) = 1.15;
    p.mu.at(1, 0) = p.mu.at(2, 0) = 0.006;
    c.schedule.stages.push_back({8000, p});
  }
  {
    RunConfig& c = b.add("fig33-plate-to-dendrite", "Fig. 33",
                         "Plate switching to dendritic branches", kFig32, 250, 60, kLong,
                         prism(3, 2, 1));
    ModelParams p = kFig32;
    p.beta.at(1, 0) = p.beta.at(2, 0) = p.beta.at(1, 1) = 1.4;
    p.mu.at(1, 0) = p.mu.at(2, 0) = 0.004;
    c.schedule.stages.push_back({12500, p});
  }
  {
    RunConfig& c = b.add("fig34-broad-branches", "Fig. 34", "Star switching to broad branches",
                         kFig28, 300, 60, 24000, prism(5, 6, 2));
    c.schedule.stages.push_back(
        {4000, params({3.0, 2.2, 2.2, 1, 2.0, 1.1, 1}, all(0.1), all(0.01), 0.16, 0.005)});
  }
  {
    RunConfig& c = b.add("fig35-sectored-branches", "Fig. 35",
                         "Star switching to sectored branches", kFig28, 300, 60, 20000,
                         prism(5, 6, 2));
    c.schedule.stages.push_back(
        {3000, params({3.5, 2.45, 2.45, 1, 2.25, 1.1, 1}, all(0.1),
                      {0.001, 0.002, 0.002, 0.001, 0.001, 0.001, 0.001}, 0.16, 0.015)});
  }
  {
    RunConfig& c = b.add("fig36-branched-sectors", "Fig. 36",
                         "Star switching to branched sectors", kFig28, 300, 60, 20000,
                         prism(5, 6, 2));
    c.schedule.stages.push_back(
        {2000, params({3.0, 2.25, 2.25, 1, 2.05, 1.05, 1}, all(0.1), all(0.001), 0.16, 0.015)});
  }
  {
    RunConfig& c = b.add("fig37-capped-column", "Fig. 37", "Capped column", kHollowColumn, 300,
                         150, 80000);
    c.schedule.stages.push_back(
        {20000, params({5, 2.4, 2.4, 1, 2.4, 1, 1}, all(0.1), all(0.001), 0.1)});
  }
  {
    RunConfig& c = b.add("fig38-capped-sectored", "Fig. 38", "Capped column with sectored caps",
                         kHollowColumn, 300, 150, 60000);
    c.schedule.stages.push_back(
        {20000, params({5, 2.1, 2.1, 1, 2.1, 1, 1}, all(0.1), all(0.001), 0.1)});
  }

  b.add("fig39-stunted-needles", "Fig. 39", "Plate with stunted needles",
        params({1.58, 1.5, 1.5, 1, 1.5, 1, 1}, all(0.1), all(0.006), 0.1), 300, 100, kLong);
  b.add("fig40-needle-star", "Fig. 40", "Star of needles", kFig40, 300, 100, kLong);
  {
    ModelParams p = kFig40;
    p.kappa.at(0, 1) = 0.12;
    p.rho = 0.057;
    b.add("fig41-butterfly", "Fig. 41", "Needle star with butterfly wings", p, 300, 100, kLong);
  }
  {
    ModelParams p = kFig40;
    p.kappa.at(0, 1) = 0.116;
    b.add("fig42-butterfly-plate", "Fig. 42", "Needle star with plates", p, 300, 100, kLong);
  }

  b.add("fig43-sandwich-branches", "Fig. 43", "Sandwich branches", kFig43, 300, 60, kLong);
  b.add("fig44-exploding-tips", "Fig. 44", "Branches with exploding tips",
        withRho(withBeta01(kFig43, 1.25), 0.091), 300, 60, kLong);
  b.add("fig45-thick-branches", "Fig. 45", "Fig. 43 with beta01 = 1.5", withBeta01(kFig43, 1.5),
        300, 60, kLong);
  b.add("fig46-thin-branches", "Fig. 46", "Fig. 43 with beta01 = 1.19",
        withBeta01(kFig43, 1.19), 300, 60, kLong);
  b.add("fig47-ridged-branches", "Fig. 47", "Fig. 43 with beta01 = 1.25",
        withBeta01(kFig43, 1.25), 300, 60, kLong);

  for (auto& preset : b.list) {
    preset.config.domain.mode = naturalFoldMode(preset.config.schedule, preset.config.seed);
  }
  return b.list;
}

}  // namespace

FoldMode naturalFoldMode(const ParamSchedule& schedule, const SeedSpec& seed) {
  const bool drift = std::any_of(schedule.stages.begin(), schedule.stages.end(),
                                 [](const ScheduleStage& s) { return s.params.phi != 0; });
  const auto sites = seedSites(seed);
  const std::set<SiteCoord> set(sites.begin(), sites.end());
  const bool zSymmetric = std::all_of(sites.begin(), sites.end(), [&](const SiteCoord& s) {
    return set.contains({s.u, s.v, -s.z});
  });
  return drift || !zSymmetric ? FoldMode::Fold12 : FoldMode::Fold24;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = build();
  return list;
}

std::optional<Preset> findPreset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace snowfake
