#include "snowfake/metrics_csv.hpp"

#include <sstream>
#include <string>

#include "snowfake/config.hpp"

namespace snowfake {

void writeMetricsHeader(std::ostream& out, const RunConfig& config) {
  std::istringstream lines(renderRunConfig(config));
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) out << "# " << line << '\n';
  }
  out << "t,rT,rZ,massCrystal,massBoundary,massVapor,edgeDensity,attachedCount,convexityDefect\n";
}

void writeMetricsRow(std::ostream& out, const MetricsSample& m) {
  out << m.t << ',' << m.rT << ',' << m.rZ << ',' << formatDouble(m.massCrystal) << ','
      << formatDouble(m.massBoundary) << ',' << formatDouble(m.massVapor) << ','
      << formatDouble(m.edgeDensity) << ',' << m.attachedCount << ','
      << formatDouble(m.convexityDefect) << '\n';
}

}  // namespace snowfake
