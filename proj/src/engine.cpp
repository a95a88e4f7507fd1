#include "snowfake/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snowfake {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t zigzag(std::int64_t x) {
  return (static_cast<std::uint64_t>(x) << 1) ^ static_cast<std::uint64_t>(x >> 63);
}

}  // namespace

bool NoiseField::bit(std::int64_t t, SiteCoord s) const {
  std::uint64_t h = mix64(seed_);
  h = mix64(h ^ zigzag(t));
  h = mix64(h ^ zigzag(s.u));
  h = mix64(h ^ zigzag(s.v));
  h = mix64(h ^ zigzag(s.z));
  return (h >> 63) != 0;
}

std::vector<double> NoiseField::sample(const Lattice& lattice, std::int64_t t) const {
  std::vector<double> xi(lattice.size());
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = (*this)(t, lattice.coord(i));
  return xi;
}

std::string_view stopReasonName(StopReason r) {
  switch (r) {
    case StopReason::Continue: return "continue";
    case StopReason::EdgeDensity: return "edge_density";
    case StopReason::Radius: return "radius";
    case StopReason::MaxTime: return "max_time";
  }
  return "continue";
}

SimState buildSeedState(const SeedSpec& seed, const Lattice& lattice, const ModelParams& p) {
  checkSeedCompatible(seed, lattice.domain());
  SimState s;
  const std::size_t n = lattice.size();
  s.attached.assign(n, 0);
  s.boundaryMass.assign(n, 0.0);
  s.diffusiveMass.assign(n, p.rho);
  for (const auto& site : seedSites(seed)) {
    const std::size_t i = lattice.indexOf(site);
    s.attached[i] = 1;
    s.boundaryMass[i] = 1.0;
    s.diffusiveMass[i] = 0.0;
  }
  s.initialMass = pairwiseSum(0, n, [&](std::size_t i) {
    return lattice.orbitSize(i) * (s.boundaryMass[i] + s.diffusiveMass[i]);
  });
  return s;
}

Simulation::Simulation(const Domain& domain, ParamSchedule schedule, const SeedSpec& seed)
    : lattice_(std::make_shared<const Lattice>(domain)), schedule_(std::move(schedule)) {
  schedule_.check();
  state_ = buildSeedState(seed, *lattice_, schedule_.initial());
  init();
}

Simulation::Simulation(std::shared_ptr<const Lattice> lattice, ParamSchedule schedule,
                       SimState state)
    : lattice_(std::move(lattice)), schedule_(std::move(schedule)), state_(std::move(state)) {
  schedule_.check();
  const std::size_t n = lattice_->size();
  if (state_.attached.size() != n || state_.boundaryMass.size() != n ||
      state_.diffusiveMass.size() != n) {
    throw std::invalid_argument("state size does not match the lattice");
  }
  init();
}

void Simulation::init() {
  if (lattice_->domain().mode == FoldMode::Fold24) {
    for (const auto& st : schedule_.stages) {
      if (st.params.phi != 0) {
        throw std::invalid_argument("drift breaks z-reflection symmetry; use fold mode 12 or full");
      }
    }
  }
  const std::size_t n = lattice_->size();
  scratch_.assign(n, 0.0);
  share_.assign(n, 0.0);
  state_.stage = schedule_.stageAt(state_.time);
  applyStage();

  const Domain& d = lattice_->domain();
  shell_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const SiteCoord c = lattice_->coord(i);
    if (hexDistanceToAxis(c) == d.radius || std::abs(c.z) == d.halfHeight) {
      shell_.push_back(static_cast<std::uint32_t>(i));
    }
  }
  refreshBoundary();
}

void Simulation::applyStage() {
  active_ = schedule_.stages[state_.stage].params;
  active_.rho = schedule_.initial().rho;
}

void Simulation::noteRadius(std::size_t site) {
  const SiteCoord c = lattice_->coord(site);
  radiusT_ = std::max(radiusT_, hexDistanceToAxis(c));
  radiusZ_ = std::max(radiusZ_, std::abs(c.z));
}

void Simulation::refreshBoundary() {
  const std::size_t n = lattice_->size();
  const auto& att = state_.attached;
  isBoundary_.assign(n, 0);
  boundary_.clear();
  radiusT_ = 0;
  radiusZ_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (att[i]) {
      noteRadius(i);
      continue;
    }
    bool touches = false;
    for (int j = 0; j < 6 && !touches; ++j) touches = att[lattice_->tNeighbor(i, j)] != 0;
    for (int j = 0; j < 2 && !touches; ++j) touches = att[lattice_->zNeighbor(i, j)] != 0;
    if (touches) {
      isBoundary_[i] = 1;
      boundary_.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

BoundaryCounts Simulation::boundaryCounts(std::size_t site) const {
  if (!isBoundary_[site]) throw std::invalid_argument("site is not on the crystal boundary");
  const auto& att = state_.attached;
  BoundaryCounts c;
  // Wall directions resolve to the (unattached) site itself and add nothing.
  for (int j = 0; j < 6; ++j) c.rawT += att[lattice_->tNeighbor(site, j)];
  for (int j = 0; j < 2; ++j) c.rawZ += att[lattice_->zNeighbor(site, j)];
  c.capped = capConfig(c.rawT, c.rawZ);
  return c;
}

void Simulation::diffuseT() {
  const Lattice& L = *lattice_;
  const std::uint8_t* att = state_.attached.data();
  const double* src = state_.diffusiveMass.data();
  double* dst = scratch_.data();
  const std::uint32_t* nb = L.planeNeighborTable().data();
  const std::size_t planes = L.planeCount();
  const auto layers = static_cast<std::int64_t>(L.layerCount());

#pragma omp parallel for num_threads(threads_) schedule(static)
  for (std::int64_t k = 0; k < layers; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * planes;
    for (std::size_t p = 0; p < planes; ++p) {
      const std::size_t i = base + p;
      if (att[i]) {
        dst[i] = src[i];
        continue;
      }
      const double dx = src[i];
      const std::uint32_t* n = nb + p * 6;
      auto val = [&](std::uint32_t q) {
        const std::size_t j = base + q;
        return att[j] ? dx : src[j];
      };
      dst[i] = planeAverage(dx, val(n[0]) + val(n[1]), val(n[2]) + val(n[3]),
                            val(n[4]) + val(n[5]));
    }
  }
  state_.diffusiveMass.swap(scratch_);
}

void Simulation::diffuseZ() {
  const Lattice& L = *lattice_;
  const std::uint8_t* att = state_.attached.data();
  const double* src = state_.diffusiveMass.data();
  double* dst = scratch_.data();
  const std::uint32_t* zl = L.zNeighborLayerTable().data();
  const std::size_t planes = L.planeCount();
  const auto layers = static_cast<std::int64_t>(L.layerCount());

#pragma omp parallel for num_threads(threads_) schedule(static)
  for (std::int64_t k = 0; k < layers; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * planes;
    const std::size_t up = zl[k * 2] * planes;
    const std::size_t down = zl[k * 2 + 1] * planes;
    for (std::size_t p = 0; p < planes; ++p) {
      const std::size_t i = base + p;
      if (att[i]) {
        dst[i] = src[i];
        continue;
      }
      const double dx = src[i];
      const double vu = att[up + p] ? dx : src[up + p];
      const double vd = att[down + p] ? dx : src[down + p];
      dst[i] = kZCenterWeight * dx + kZNeighborWeight * (vu + vd);
    }
  }
  state_.diffusiveMass.swap(scratch_);
}

void Simulation::drift() {
  const double phi = active_.phi;
  if (phi == 0) return;
  const Lattice& L = *lattice_;
  const std::uint8_t* att = state_.attached.data();
  const double* src = state_.diffusiveMass.data();
  double* dst = scratch_.data();
  const std::uint32_t* zl = L.zNeighborLayerTable().data();
  const std::uint8_t* zw = L.zWallTable().data();
  const std::size_t planes = L.planeCount();
  const auto layers = static_cast<std::int64_t>(L.layerCount());

#pragma omp parallel for num_threads(threads_) schedule(static)
  for (std::int64_t k = 0; k < layers; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * planes;
    const std::size_t up = zl[k * 2] * planes;
    const std::size_t down = zl[k * 2 + 1] * planes;
    const bool upWall = zw[k * 2] != 0;
    const bool downWall = zw[k * 2 + 1] != 0;
    for (std::size_t p = 0; p < planes; ++p) {
      const std::size_t i = base + p;
      if (att[i]) {
        dst[i] = src[i];
        continue;
      }
      // Vapor moves one layer down unless the target is crystal or wall.
      const double out = (!downWall && !att[down + p]) ? 1.0 : 0.0;
      const double in = (!upWall && !att[up + p]) ? 1.0 : 0.0;
      dst[i] = (1.0 - phi * out) * src[i] + phi * in * src[up + p];
    }
  }
  state_.diffusiveMass.swap(scratch_);
}

void Simulation::diffuse() {
  diffuseT();
  diffuseZ();
  drift();
}

void Simulation::diffuseNoisy(std::span<const double> xi) {
  auto& d = state_.diffusiveMass;
  std::vector<double> before = d;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (1.0 - xi[i]) * before[i];
  diffuse();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!state_.attached[i]) d[i] = d[i] + xi[i] * before[i];
  }
}

void Simulation::freeze() {
  auto& b = state_.boundaryMass;
  auto& d = state_.diffusiveMass;
  for (const std::uint32_t i : boundary_) {
    const double k = active_.kappa[boundaryCounts(i).capped];
    b[i] = b[i] + (1.0 - k) * d[i];
    d[i] = k * d[i];
  }
}

void Simulation::freezeNoisy(std::span<const double> xi) {
  auto& b = state_.boundaryMass;
  auto& d = state_.diffusiveMass;
  for (const std::uint32_t i : boundary_) {
    const double k = active_.kappa[boundaryCounts(i).capped];
    const double mobile = d[i] * (1.0 - xi[i]);
    b[i] = b[i] + (1.0 - k) * mobile;
    d[i] = k * mobile + d[i] * xi[i];
  }
}

std::vector<std::uint32_t> Simulation::attach() {
  auto& att = state_.attached;
  auto& b = state_.boundaryMass;
  auto& d = state_.diffusiveMass;
  const bool uniform = active_.uniformVariant;

  std::vector<std::uint32_t> joined;
  for (const std::uint32_t i : boundary_) {
    const BoundaryCounts c = boundaryCounts(i);
    const bool filled = c.rawT >= 4 && c.rawZ >= 1;
    bool joins = false;
    if (uniform) {
      joins = b[i] >= (filled ? 1.0 : active_.beta[c.capped]);
    } else {
      joins = filled || b[i] >= active_.beta[c.capped];
    }
    if (joins) joined.push_back(i);
  }
  for (const std::uint32_t i : joined) {
    att[i] = 1;
    b[i] = b[i] + d[i];
    d[i] = 0.0;
  }
  addNewBoundary(joined);
  return joined;
}

void Simulation::addNewBoundary(std::span<const std::uint32_t> newlyAttached) {
  if (newlyAttached.empty()) return;
  const auto& att = state_.attached;
  std::vector<std::uint32_t> added;
  for (const std::uint32_t y : newlyAttached) {
    isBoundary_[y] = 0;
    noteRadius(y);
    auto consider = [&](std::size_t n) {
      if (!att[n] && !isBoundary_[n]) {
        isBoundary_[n] = 1;
        added.push_back(static_cast<std::uint32_t>(n));
      }
    };
    for (int j = 0; j < 6; ++j) consider(lattice_->tNeighbor(y, j));
    for (int j = 0; j < 2; ++j) consider(lattice_->zNeighbor(y, j));
  }
  std::erase_if(boundary_, [&](std::uint32_t i) { return att[i] != 0; });
  std::sort(added.begin(), added.end());
  const std::size_t mid = boundary_.size();
  boundary_.insert(boundary_.end(), added.begin(), added.end());
  std::inplace_merge(boundary_.begin(), boundary_.begin() + static_cast<std::ptrdiff_t>(mid),
                     boundary_.end());
}

void Simulation::redistribute(std::span<const std::uint32_t> newlyAttached) {
  const Lattice& L = *lattice_;
  const auto& att = state_.attached;
  auto& b = state_.boundaryMass;

  std::vector<std::uint32_t> donors;
  std::vector<std::uint32_t> receivers;
  for (const std::uint32_t y : newlyAttached) {
    int open = 0;
    for (int j = 0; j < 6; ++j) open += !L.wallT(y, j) && !att[L.tNeighbor(y, j)];
    for (int j = 0; j < 2; ++j) open += !L.wallZ(y, j) && !att[L.zNeighbor(y, j)];
    // With no unattached neighbor the excess stays put.
    if (open == 0) continue;
    share_[y] = (b[y] - 1.0) / open;
    donors.push_back(y);
    for (int j = 0; j < 6; ++j) {
      const std::size_t n = L.tNeighbor(y, j);
      if (!L.wallT(y, j) && !att[n]) receivers.push_back(static_cast<std::uint32_t>(n));
    }
    for (int j = 0; j < 2; ++j) {
      const std::size_t n = L.zNeighbor(y, j);
      if (!L.wallZ(y, j) && !att[n]) receivers.push_back(static_cast<std::uint32_t>(n));
    }
  }
  std::sort(receivers.begin(), receivers.end());
  receivers.erase(std::unique(receivers.begin(), receivers.end()), receivers.end());

  std::vector<double> gained(receivers.size());
  for (std::size_t r = 0; r < receivers.size(); ++r) {
    const std::size_t x = receivers[r];
    // Wall directions resolve to x itself, whose share is zero.
    auto c = [&](int j) { return share_[L.tNeighbor(x, j)]; };
    const double plane = planePairSum(c(0) + c(1), c(2) + c(3), c(4) + c(5));
    const double vertical = share_[L.zNeighbor(x, 0)] + share_[L.zNeighbor(x, 1)];
    gained[r] = plane + vertical;
  }
  for (std::size_t r = 0; r < receivers.size(); ++r) {
    b[receivers[r]] = b[receivers[r]] + gained[r];
  }
  for (const std::uint32_t y : donors) {
    b[y] = 1.0;
    share_[y] = 0.0;
  }
}

void Simulation::melt() {
  auto& b = state_.boundaryMass;
  auto& d = state_.diffusiveMass;
  for (const std::uint32_t i : boundary_) {
    const double m = active_.mu[boundaryCounts(i).capped];
    const double released = m * b[i];
    b[i] = (1.0 - m) * b[i];
    d[i] = d[i] + released;
  }
}

void Simulation::cycle() {
  const std::size_t stage = schedule_.stageAt(state_.time);
  if (stage != state_.stage) {
    state_.stage = stage;
    applyStage();
  }
  if (active_.epsilon > 0) {
    const auto xi = NoiseField(active_.rngSeed, active_.epsilon).sample(*lattice_, state_.time);
    diffuseNoisy(xi);
    freezeNoisy(xi);
  } else {
    diffuse();
    freeze();
  }
  const auto joined = attach();
  if (active_.uniformVariant) redistribute(joined);
  melt();
  ++state_.time;
}

double Simulation::totalMass() const {
  const Lattice& L = *lattice_;
  return pairwiseSum(0, L.size(), [&](std::size_t i) {
    return L.orbitSize(i) * (state_.boundaryMass[i] + state_.diffusiveMass[i]);
  });
}

double Simulation::edgeDensity() const {
  const Lattice& L = *lattice_;
  double mass = 0;
  double count = 0;
  for (const std::uint32_t i : shell_) {
    if (state_.attached[i]) continue;
    mass += L.orbitSize(i) * state_.diffusiveMass[i];
    count += L.orbitSize(i);
  }
  return count > 0 ? mass / count : 0.0;
}

StopReason Simulation::checkStop(const StopCriteria& c) const {
  const Domain& d = lattice_->domain();
  if (edgeDensity() < c.edgeDensityFraction * initialRho()) return StopReason::EdgeDensity;
  if (radiusT_ > c.radiusFraction * d.radius || radiusZ_ > c.radiusFraction * d.halfHeight) {
    return StopReason::Radius;
  }
  if (state_.time >= c.maxTime) return StopReason::MaxTime;
  return StopReason::Continue;
}

}  // namespace snowfake
