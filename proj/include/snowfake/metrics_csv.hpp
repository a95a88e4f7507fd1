#pragma once

#include <ostream>

#include "snowfake/analysis.hpp"
#include "snowfake/model.hpp"

namespace snowfake {

/// The run config as `# ` comment lines followed by the column header
/// t,rT,rZ,massCrystal,massBoundary,massVapor,edgeDensity,attachedCount,convexityDefect
void writeMetricsHeader(std::ostream& out, const RunConfig& config);
void writeMetricsRow(std::ostream& out, const MetricsSample& m);

}  // namespace snowfake
