#include "snowfake/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace snowfake {

std::size_t BoundaryConfig::slot() const {
  if (!valid()) throw std::out_of_range("invalid boundary configuration " + name());
  return nZ == 0 ? static_cast<std::size_t>(nT) : static_cast<std::size_t>(nT == 0 ? 0 : nT + 3);
}

std::string BoundaryConfig::name() const { return std::to_string(nT) + std::to_string(nZ); }

BoundaryConfig capConfig(int rawT, int rawZ) { return {std::min(rawT, 3), std::min(rawZ, 1)}; }

namespace {

void checkRange(std::vector<ParamViolation>& out, const char* name, const ConfigTable& t,
                double lo, double hi, bool openLo) {
  for (const auto c : kBoundaryConfigs) {
    const double x = t[c];
    const bool bad = openLo ? !(x > lo && x <= hi) : !(x >= lo && x <= hi);
    if (bad) {
      std::ostringstream os;
      os << name << c.name() << "=" << x << " outside " << (openLo ? "(" : "[") << lo << ", "
         << hi << "]";
      out.push_back({Severity::Error, os.str()});
    }
  }
}

void checkMonotone(std::vector<ParamViolation>& out, const char* name, const ConfigTable& t) {
  // Each pair (a, b) requires t[a] >= t[b]: b has more attached neighbors.
  static constexpr std::array<std::array<BoundaryConfig, 2>, 8> kOrder{{
      {{{1, 0}, {2, 0}}},
      {{{2, 0}, {3, 0}}},
      {{{0, 1}, {1, 1}}},
      {{{1, 1}, {2, 1}}},
      {{{2, 1}, {3, 1}}},
      {{{1, 0}, {1, 1}}},
      {{{2, 0}, {2, 1}}},
      {{{3, 0}, {3, 1}}},
  }};
  for (const auto& [a, b] : kOrder) {
    if (t[b] > t[a]) {
      std::ostringstream os;
      os << name << b.name() << "=" << t[b] << " exceeds " << name << a.name() << "=" << t[a]
         << " (not non-increasing in neighbor count)";
      out.push_back({Severity::Warning, os.str()});
    }
  }
}

}  // namespace

std::vector<ParamViolation> validateParams(const ModelParams& p) {
  std::vector<ParamViolation> out;
  checkRange(out, "beta", p.beta, 0.0, 1e300, true);
  checkRange(out, "kappa", p.kappa, 0.0, 1.0, false);
  checkRange(out, "mu", p.mu, 0.0, 1.0, false);
  if (!(p.rho > 0)) out.push_back({Severity::Error, "rho must be positive"});
  if (!(p.phi >= 0 && p.phi < 1)) out.push_back({Severity::Error, "phi must lie in [0, 1)"});
  if (!(p.epsilon >= 0 && p.epsilon <= 1)) {
    out.push_back({Severity::Error, "epsilon must lie in [0, 1]"});
  }
  checkMonotone(out, "beta", p.beta);
  checkMonotone(out, "kappa", p.kappa);
  checkMonotone(out, "mu", p.mu);
  return out;
}

bool hasErrors(const std::vector<ParamViolation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const ParamViolation& v) { return v.severity == Severity::Error; });
}

bool packardLint(const ModelParams& p) {
  return (1 - p.kappa.at(0, 1)) * p.rho < p.beta.at(0, 1) &&
         (1 - p.kappa.at(1, 0)) * p.rho < p.beta.at(1, 0);
}

bool growthLint(const ModelParams& p) {
  return p.mu.at(0, 1) * p.beta.at(0, 1) < (1 - p.kappa.at(0, 1)) * p.rho &&
         p.mu.at(1, 0) * p.beta.at(1, 0) < (1 - p.kappa.at(1, 0)) * p.rho;
}

std::vector<int> seedLayerRadii(const SeedSpec& seed) {
  if (seed.kind == SeedKind::Canonical) return {2};
  if (seed.height < 1 || seed.hexRadiusBottom < 0 || seed.hexRadiusTop < 0) {
    throw std::invalid_argument("prism seed needs height >= 1 and non-negative radii");
  }
  std::vector<int> radii;
  const int h = seed.height;
  for (int k = 0; k < h; ++k) {
    // Offset from the bottom radius, truncated toward zero.
    const int offset = h == 1 ? 0 : (seed.hexRadiusTop - seed.hexRadiusBottom) * k / (h - 1);
    radii.push_back(seed.hexRadiusBottom + offset);
  }
  return radii;
}

int seedBottomZ(const SeedSpec& seed) {
  const int h = seed.kind == SeedKind::Canonical ? 1 : seed.height;
  return -((h - 1) / 2);
}

std::vector<SiteCoord> seedSites(const SeedSpec& seed) {
  const auto radii = seedLayerRadii(seed);
  const int z0 = seedBottomZ(seed);
  std::vector<SiteCoord> out;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const int r = radii[k];
    for (int u = -r; u <= r; ++u) {
      for (int v = -r; v <= r; ++v) {
        if (hexDistance(u, v) <= r) out.push_back({u, v, z0 + static_cast<int>(k)});
      }
    }
  }
  return out;
}

void ParamSchedule::check() const {
  if (stages.empty()) throw std::invalid_argument("schedule has no stages");
  if (stages.front().startTime != 0) {
    throw std::invalid_argument("first schedule stage must start at time 0");
  }
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (stages[i].startTime <= stages[i - 1].startTime) {
      throw std::invalid_argument("schedule start times must strictly increase");
    }
  }
}

std::size_t ParamSchedule::stageAt(std::int64_t t) const {
  std::size_t s = 0;
  while (s + 1 < stages.size() && stages[s + 1].startTime <= t) ++s;
  return s;
}

void checkSeedCompatible(const SeedSpec& seed, const Domain& d) {
  const auto sites = seedSites(seed);
  for (const auto& s : sites) {
    // A seed touching the outer wall leaves no room for vapor around it.
    if (hexDistanceToAxis(s) >= d.radius || std::abs(s.z) >= d.halfHeight) {
      throw std::invalid_argument("seed does not fit inside the domain");
    }
  }
  if (d.mode == FoldMode::Full) return;
  const std::set<SiteCoord> set(sites.begin(), sites.end());
  for (const auto& s : sites) {
    for (const auto& img : groupImages(s, d.mode)) {
      if (!set.contains(img)) {
        throw std::invalid_argument(std::string("seed lacks the symmetry required by fold mode ") +
                                    std::string(foldModeName(d.mode)));
      }
    }
  }
}

}  // namespace snowfake
