#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "snowfake/engine.hpp"
#include "snowfake/lattice.hpp"

namespace snowfake {

/// Closed triangulated surface of a union of hexagonal prisms (side 1/sqrt(3),
/// height 1, centred at embed(s)). Triangles are counter-clockwise seen from
/// outside. Where two cells touch only along an edge the surface is kept
/// manifold by giving each cell its own copy of the edge's vertices.
struct BoundaryMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::size_t cellCount = 0;
};

/// Attached sites of `state`, unfolded to every site of the full domain,
/// sorted.
std::vector<SiteCoord> crystalCells(const Lattice& lattice, const SimState& state);

/// One closing pass: adds every vacant in-domain cell with at least 5 of its
/// 8 neighbors in `cells`. The result is sorted and contains `cells`.
std::vector<SiteCoord> smoothCells(const std::vector<SiteCoord>& cells, const Domain& domain);

/// Throws std::invalid_argument on an empty cell list.
BoundaryMesh meshCells(const std::vector<SiteCoord>& cells);
BoundaryMesh buildMesh(const Lattice& lattice, const SimState& state, bool smoothing);

/// Wavefront OBJ: `v x y z` with 9 significant digits, `f a b c` 1-based.
void writeObj(const BoundaryMesh& mesh, std::ostream& out);
/// POV-Ray mesh2 declared as `Snowfake`, 0-based face indices.
void writePovMesh2(const BoundaryMesh& mesh, std::ostream& out);
/// Throw std::invalid_argument on an empty mesh, std::runtime_error on I/O failure.
void exportObj(const BoundaryMesh& mesh, const std::filesystem::path& path);
void exportPovMesh2(const BoundaryMesh& mesh, const std::filesystem::path& path);

}  // namespace snowfake
