#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace snowfake {

/// A site of the stacked triangular lattice T x Z.
/// (u, v) are axial hex coordinates in the plane, z is the layer index.
struct SiteCoord {
  int u = 0;
  int v = 0;
  int z = 0;

  friend auto operator<=>(const SiteCoord&, const SiteCoord&) = default;
};

/// In-plane neighbor offsets. Consecutive entries are opposite directions,
/// which the diffusion stencil relies on.
inline constexpr std::array<std::array<int, 2>, 6> kPlaneOffsets{{
    {+1, 0}, {-1, 0}, {0, +1}, {0, -1}, {+1, -1}, {-1, +1}}};

std::array<SiteCoord, 6> tNeighbors(SiteCoord s);
std::array<SiteCoord, 2> zNeighbors(SiteCoord s);

/// Graph distance from (u, v) to the axis (0, 0) on the triangular lattice.
int hexDistanceToAxis(SiteCoord s);
int hexDistance(int u, int v);

struct Point3 {
  double x = 0;
  double y = 0;
  double z = 0;
};

/// Prism center of a site in micron units: in-plane bonds and prism height
/// all have length 1.
Point3 embed(SiteCoord s);

enum class FoldMode { Full, Fold24, Fold12 };

std::string_view foldModeName(FoldMode mode);
FoldMode parseFoldMode(std::string_view text);

/// Hexagonal prism of graph radius `radius` spanning layers -halfHeight..halfHeight.
struct Domain {
  int radius = 0;
  int halfHeight = 0;
  FoldMode mode = FoldMode::Full;

  bool contains(SiteCoord s) const;
  /// Number of sites of the unfolded domain.
  std::size_t siteCount() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

/// Group order of the symmetry used by a fold mode (1, 24 or 12).
int groupOrder(FoldMode mode);

/// All images of `s` under the symmetry group of `mode`, with repetitions.
/// Full mode yields only `s` itself.
std::vector<SiteCoord> groupImages(SiteCoord s, FoldMode mode);

/// Applies in-plane group element `g` (0..11: six rotations, then the same
/// six composed with the u<->v reflection).
SiteCoord applyPlaneElement(SiteCoord s, int g);

struct SymmetryOrbit {
  SiteCoord representative;
  int orbitSize = 1;
};

/// Canonical representative: lexicographically smallest image.
/// Throws std::out_of_range when `s` lies outside the domain.
SymmetryOrbit fold(SiteCoord s, const Domain& d);

/// Indexing of the stored sites of a domain. In folded modes only orbit
/// representatives are stored; neighbor lookups resolve through the group.
///
/// Site index = layer * planeCount() + plane. Out-of-domain neighbors are
/// reported as the site itself, which realizes the reflecting outer wall;
/// wallT/wallZ tell the two cases apart where it matters.
class Lattice {
 public:
  explicit Lattice(const Domain& domain);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return planeCount() * layerCount(); }
  std::size_t planeCount() const { return planeCoords_.size(); }
  std::size_t layerCount() const { return layerZ_.size(); }

  std::size_t plane(std::size_t site) const { return site % planeCount(); }
  std::size_t layer(std::size_t site) const { return site / planeCount(); }
  SiteCoord coord(std::size_t site) const;
  int orbitSize(std::size_t site) const;

  /// Index of the stored representative of `s`; throws std::out_of_range
  /// for sites outside the domain.
  std::size_t indexOf(SiteCoord s) const;

  std::size_t tNeighbor(std::size_t site, int dir) const {
    return layer(site) * planeCount() + planeNeighbors_[plane(site) * 6 + dir];
  }
  bool wallT(std::size_t site, int dir) const {
    return (planeWall_[plane(site)] >> dir) & 1U;
  }
  /// dir 0 is z+1, dir 1 is z-1.
  std::size_t zNeighbor(std::size_t site, int dir) const {
    const std::size_t k = layer(site);
    return zNeighborLayer_[k * 2 + dir] * planeCount() + plane(site);
  }
  bool wallZ(std::size_t site, int dir) const {
    return zWall_[layer(site) * 2 + dir] != 0;
  }

  // Raw tables for the stencil kernels.
  std::span<const std::uint32_t> planeNeighborTable() const { return planeNeighbors_; }
  std::span<const std::uint32_t> zNeighborLayerTable() const { return zNeighborLayer_; }
  std::span<const std::uint8_t> zWallTable() const { return zWall_; }

 private:
  Domain domain_;
  std::vector<std::array<int, 2>> planeCoords_;
  std::vector<std::uint8_t> planeOrbit_;
  std::vector<std::uint32_t> planeNeighbors_;  // 6 per plane site
  std::vector<std::uint8_t> planeWall_;        // bit j: direction j leaves the domain
  std::vector<int> layerZ_;
  std::vector<std::uint8_t> layerOrbit_;
  std::vector<std::uint32_t> zNeighborLayer_;  // 2 per layer
  std::vector<std::uint8_t> zWall_;            // 2 per layer
  std::vector<std::int32_t> planeLookup_;      // (2R+1)^2 box -> plane rep index
};

/// Expands a per-representative field of `folded` onto every site of the
/// unfolded domain, indexed like Lattice(Domain{R, H, Full}).
template <typename T>
std::vector<T> unfoldField(std::span<const T> values, const Lattice& folded) {
  const Domain full{folded.domain().radius, folded.domain().halfHeight, FoldMode::Full};
  const Lattice target(full);
  std::vector<T> out(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    out[i] = values[folded.indexOf(target.coord(i))];
  }
  return out;
}

}  // namespace snowfake
