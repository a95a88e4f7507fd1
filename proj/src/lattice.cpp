#include "snowfake/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace snowfake {

std::array<SiteCoord, 6> tNeighbors(SiteCoord s) {
  std::array<SiteCoord, 6> out{};
  for (std::size_t j = 0; j < 6; ++j) {
    out[j] = {s.u + kPlaneOffsets[j][0], s.v + kPlaneOffsets[j][1], s.z};
  }
  return out;
}

std::array<SiteCoord, 2> zNeighbors(SiteCoord s) {
  return {SiteCoord{s.u, s.v, s.z + 1}, SiteCoord{s.u, s.v, s.z - 1}};
}

int hexDistance(int u, int v) { return (std::abs(u) + std::abs(v) + std::abs(u + v)) / 2; }

int hexDistanceToAxis(SiteCoord s) { return hexDistance(s.u, s.v); }

Point3 embed(SiteCoord s) {
  return {s.u + 0.5 * s.v, s.v * (std::sqrt(3.0) / 2.0), static_cast<double>(s.z)};
}

std::string_view foldModeName(FoldMode mode) {
  switch (mode) {
    case FoldMode::Full: return "full";
    case FoldMode::Fold24: return "24";
    case FoldMode::Fold12: return "12";
  }
  return "full";
}

FoldMode parseFoldMode(std::string_view text) {
  if (text == "full") return FoldMode::Full;
  if (text == "24") return FoldMode::Fold24;
  if (text == "12") return FoldMode::Fold12;
  throw std::invalid_argument("unknown fold mode '" + std::string(text) + "' (expected full, 24 or 12)");
}

bool Domain::contains(SiteCoord s) const {
  return hexDistanceToAxis(s) <= radius && std::abs(s.z) <= halfHeight;
}

std::size_t Domain::siteCount() const {
  const auto r = static_cast<std::size_t>(radius);
  return (3 * r * r + 3 * r + 1) * static_cast<std::size_t>(2 * halfHeight + 1);
}

int groupOrder(FoldMode mode) {
  switch (mode) {
    case FoldMode::Full: return 1;
    case FoldMode::Fold24: return 24;
    case FoldMode::Fold12: return 12;
  }
  return 1;
}

SiteCoord applyPlaneElement(SiteCoord s, int g) {
  int u = s.u;
  int v = s.v;
  if (g >= 6) {
    std::swap(u, v);
    g -= 6;
  }
  // 60 degree rotation in axial coordinates: (u, v) -> (u + v, -u).
  for (int r = 0; r < g; ++r) {
    const int nu = u + v;
    const int nv = -u;
    u = nu;
    v = nv;
  }
  return {u, v, s.z};
}

std::vector<SiteCoord> groupImages(SiteCoord s, FoldMode mode) {
  std::vector<SiteCoord> out;
  if (mode == FoldMode::Full) {
    out.push_back(s);
    return out;
  }
  out.reserve(static_cast<std::size_t>(groupOrder(mode)));
  for (int g = 0; g < 12; ++g) {
    const SiteCoord img = applyPlaneElement(s, g);
    out.push_back(img);
    if (mode == FoldMode::Fold24) out.push_back({img.u, img.v, -img.z});
  }
  return out;
}

SymmetryOrbit fold(SiteCoord s, const Domain& d) {
  if (!d.contains(s)) {
    throw std::out_of_range("site (" + std::to_string(s.u) + "," + std::to_string(s.v) + "," +
                            std::to_string(s.z) + ") lies outside the domain");
  }
  auto images = groupImages(s, d.mode);
  std::sort(images.begin(), images.end());
  const auto distinct = std::unique(images.begin(), images.end()) - images.begin();
  return {images.front(), static_cast<int>(distinct)};
}

namespace {

std::array<int, 2> planeRep(int u, int v, FoldMode mode, int& orbit) {
  if (mode == FoldMode::Full) {
    orbit = 1;
    return {u, v};
  }
  std::array<std::array<int, 2>, 12> imgs{};
  for (int g = 0; g < 12; ++g) {
    const SiteCoord img = applyPlaneElement({u, v, 0}, g);
    imgs[static_cast<std::size_t>(g)] = {img.u, img.v};
  }
  std::sort(imgs.begin(), imgs.end());
  orbit = static_cast<int>(std::unique(imgs.begin(), imgs.end()) - imgs.begin());
  return imgs.front();
}

}  // namespace

Lattice::Lattice(const Domain& domain) : domain_(domain) {
  if (domain.radius < 0 || domain.halfHeight < 0) {
    throw std::invalid_argument("domain radius and half height must be non-negative");
  }
  const int R = domain.radius;
  const int side = 2 * R + 1;
  planeLookup_.assign(static_cast<std::size_t>(side) * side, -1);

  // Representatives first, in lexicographic (u, v) order.
  for (int u = -R; u <= R; ++u) {
    for (int v = -R; v <= R; ++v) {
      if (hexDistance(u, v) > R) continue;
      int orbit = 1;
      const auto rep = planeRep(u, v, domain.mode, orbit);
      if (rep[0] == u && rep[1] == v) {
        planeLookup_[static_cast<std::size_t>((u + R) * side + (v + R))] =
            static_cast<std::int32_t>(planeCoords_.size());
        planeCoords_.push_back({u, v});
        planeOrbit_.push_back(static_cast<std::uint8_t>(orbit));
      }
    }
  }
  for (int u = -R; u <= R; ++u) {
    for (int v = -R; v <= R; ++v) {
      if (hexDistance(u, v) > R) continue;
      int orbit = 1;
      const auto rep = planeRep(u, v, domain.mode, orbit);
      planeLookup_[static_cast<std::size_t>((u + R) * side + (v + R))] =
          planeLookup_[static_cast<std::size_t>((rep[0] + R) * side + (rep[1] + R))];
    }
  }

  planeNeighbors_.resize(planeCoords_.size() * 6);
  planeWall_.assign(planeCoords_.size(), 0);
  for (std::size_t p = 0; p < planeCoords_.size(); ++p) {
    for (int j = 0; j < 6; ++j) {
      const int nu = planeCoords_[p][0] + kPlaneOffsets[static_cast<std::size_t>(j)][0];
      const int nv = planeCoords_[p][1] + kPlaneOffsets[static_cast<std::size_t>(j)][1];
      if (hexDistance(nu, nv) > R) {
        planeNeighbors_[p * 6 + static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(p);
        planeWall_[p] = static_cast<std::uint8_t>(planeWall_[p] | (1U << j));
      } else {
        planeNeighbors_[p * 6 + static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(
            planeLookup_[static_cast<std::size_t>((nu + R) * side + (nv + R))]);
      }
    }
  }

  const int H = domain.halfHeight;
  const bool zFold = domain.mode == FoldMode::Fold24;
  const int zMax = zFold ? 0 : H;
  for (int z = -H; z <= zMax; ++z) {
    layerZ_.push_back(z);
    layerOrbit_.push_back(zFold && z != 0 ? 2 : 1);
  }
  auto layerOf = [&](int z) -> std::uint32_t {
    const int rz = zFold ? -std::abs(z) : z;
    return static_cast<std::uint32_t>(rz + H);
  };
  zNeighborLayer_.resize(layerZ_.size() * 2);
  zWall_.assign(layerZ_.size() * 2, 0);
  for (std::size_t k = 0; k < layerZ_.size(); ++k) {
    const int z = layerZ_[k];
    for (int dir = 0; dir < 2; ++dir) {
      const int nz = dir == 0 ? z + 1 : z - 1;
      if (std::abs(nz) > H) {
        zNeighborLayer_[k * 2 + static_cast<std::size_t>(dir)] = static_cast<std::uint32_t>(k);
        zWall_[k * 2 + static_cast<std::size_t>(dir)] = 1;
      } else {
        zNeighborLayer_[k * 2 + static_cast<std::size_t>(dir)] = layerOf(nz);
      }
    }
  }
}

SiteCoord Lattice::coord(std::size_t site) const {
  const auto& pc = planeCoords_[plane(site)];
  return {pc[0], pc[1], layerZ_[layer(site)]};
}

int Lattice::orbitSize(std::size_t site) const {
  return planeOrbit_[plane(site)] * layerOrbit_[layer(site)];
}

std::size_t Lattice::indexOf(SiteCoord s) const {
  if (!domain_.contains(s)) {
    throw std::out_of_range("site (" + std::to_string(s.u) + "," + std::to_string(s.v) + "," +
                            std::to_string(s.z) + ") lies outside the domain");
  }
  const int R = domain_.radius;
  const int side = 2 * R + 1;
  const auto p = static_cast<std::size_t>(
      planeLookup_[static_cast<std::size_t>((s.u + R) * side + (s.v + R))]);
  const int rz = domain_.mode == FoldMode::Fold24 ? -std::abs(s.z) : s.z;
  return static_cast<std::size_t>(rz + domain_.halfHeight) * planeCount() + p;
}

}  // namespace snowfake
