#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snowfake/model.hpp"

namespace snowfake {

/// A published case study: parameters, seed and schedule as printed, with a
/// domain size of our choosing (the figures do not state one).
struct Preset {
  std::string name;
  std::string figure;       // e.g. "Fig. 4"
  std::string description;
  RunConfig config;
  /// The paper states no lattice size for any figure, so the domain is always ours.
  bool paperDomain = false;
  /// False when the figure gives no time and max_time is a generous cap.
  bool paperMaxTime = false;
};

const std::vector<Preset>& presets();
/// nullopt for unknown names.
std::optional<Preset> findPreset(std::string_view name);

/// Fold 12 when drift is present or the seed is z-asymmetric, otherwise fold 24.
FoldMode naturalFoldMode(const ParamSchedule& schedule, const SeedSpec& seed);

}  // namespace snowfake
