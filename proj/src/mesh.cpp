#include "snowfake/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace snowfake {

namespace {

// Corner k of a hexagon sits at angle 30 + 60k degrees. In units of
// (x/2, y*sqrt(3)/6) its offset from the centre is integral.
constexpr int kCornerX[6] = {1, 0, -1, -1, 0, 1};
constexpr int kCornerY[6] = {1, 2, 1, -1, -2, -1};
// Lateral face k (corners k, k+1) looks at this T-neighbor.
constexpr int kSideDir[6][2] = {{0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}};

class CellSet {
 public:
  explicit CellSet(const std::vector<SiteCoord>& cells) {
    if (cells.empty()) return;
    lo_ = hi_ = cells.front();
    for (const auto& c : cells) {
      lo_ = {std::min(lo_.u, c.u), std::min(lo_.v, c.v), std::min(lo_.z, c.z)};
      hi_ = {std::max(hi_.u, c.u), std::max(hi_.v, c.v), std::max(hi_.z, c.z)};
    }
    lo_ = {lo_.u - 1, lo_.v - 1, lo_.z - 1};
    hi_ = {hi_.u + 1, hi_.v + 1, hi_.z + 1};
    nu_ = hi_.u - lo_.u + 1;
    nv_ = hi_.v - lo_.v + 1;
    bits_.assign(static_cast<std::size_t>(nu_) * nv_ * (hi_.z - lo_.z + 1), 0);
    for (const auto& c : cells) bits_[index(c)] = 1;
  }

  bool contains(SiteCoord c) const {
    if (bits_.empty() || c.u < lo_.u || c.u > hi_.u || c.v < lo_.v || c.v > hi_.v ||
        c.z < lo_.z || c.z > hi_.z) {
      return false;
    }
    return bits_[index(c)] != 0;
  }
  SiteCoord lo() const { return lo_; }
  SiteCoord hi() const { return hi_; }

 private:
  std::size_t index(SiteCoord c) const {
    return (static_cast<std::size_t>(c.z - lo_.z) * nv_ + (c.v - lo_.v)) * nu_ + (c.u - lo_.u);
  }
  SiteCoord lo_{}, hi_{};
  int nu_ = 0, nv_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct VertexKey {
  int x, y, z;
  friend bool operator==(const VertexKey&, const VertexKey&) = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    std::uint64_t h = static_cast<std::uint32_t>(k.x);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(k.y);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(k.z);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct HalfEdge {
  std::uint32_t tri;
  std::uint8_t corner;  // edge runs from corner to corner + 1
  std::uint32_t owner;
};

std::uint32_t findRoot(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void unite(std::vector<std::uint32_t>& parent, std::uint32_t a, std::uint32_t b) {
  a = findRoot(parent, a);
  b = findRoot(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

void requireMesh(const BoundaryMesh& mesh) {
  if (mesh.triangles.empty()) throw std::invalid_argument("cannot export an empty mesh");
}

std::ofstream openOutput(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void finish(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::vector<SiteCoord> crystalCells(const Lattice& lattice, const SimState& state) {
  std::vector<SiteCoord> reps;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (state.attached[i]) reps.push_back(lattice.coord(i));
  }
  std::vector<SiteCoord> out;
  for (const auto& s : reps) {
    for (const auto& img : groupImages(s, lattice.domain().mode)) out.push_back(img);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SiteCoord> smoothCells(const std::vector<SiteCoord>& cells, const Domain& domain) {
  const CellSet set(cells);
  std::vector<SiteCoord> out = cells;
  if (cells.empty()) return out;
  const SiteCoord lo = set.lo(), hi = set.hi();
  for (int u = lo.u; u <= hi.u; ++u) {
    for (int v = lo.v; v <= hi.v; ++v) {
      for (int z = lo.z; z <= hi.z; ++z) {
        const SiteCoord s{u, v, z};
        if (set.contains(s) || !domain.contains(s)) continue;
        int n = 0;
        for (const auto& t : tNeighbors(s)) n += set.contains(t);
        for (const auto& t : zNeighbors(s)) n += set.contains(t);
        if (n >= 5) out.push_back(s);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BoundaryMesh meshCells(const std::vector<SiteCoord>& cells) {
  if (cells.empty()) throw std::invalid_argument("cannot mesh an empty crystal");
  const CellSet set(cells);

  std::vector<std::array<VertexKey, 3>> tris;
  std::vector<std::uint32_t> owner;
  auto emit = [&](std::uint32_t cell, VertexKey a, VertexKey b, VertexKey c) {
    tris.push_back({a, b, c});
    owner.push_back(cell);
  };

  for (std::uint32_t ci = 0; ci < cells.size(); ++ci) {
    const SiteCoord s = cells[ci];
    const int cx = 2 * s.u + s.v;
    const int cy = 3 * s.v;
    auto corner = [&](int k, int dz) {
      return VertexKey{cx + kCornerX[k % 6], cy + kCornerY[k % 6], 2 * s.z + dz};
    };
    if (!set.contains({s.u, s.v, s.z + 1})) {
      for (int k = 1; k <= 4; ++k) emit(ci, corner(0, 1), corner(k, 1), corner(k + 1, 1));
    }
    if (!set.contains({s.u, s.v, s.z - 1})) {
      for (int k = 1; k <= 4; ++k) emit(ci, corner(0, -1), corner(k + 1, -1), corner(k, -1));
    }
    for (int k = 0; k < 6; ++k) {
      if (set.contains({s.u + kSideDir[k][0], s.v + kSideDir[k][1], s.z})) continue;
      emit(ci, corner(k, -1), corner(k + 1, -1), corner(k + 1, 1));
      emit(ci, corner(k, -1), corner(k + 1, 1), corner(k, 1));
    }
  }

  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> keyId;
  std::vector<VertexKey> keys;
  std::vector<std::array<std::uint32_t, 3>> ids(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int j = 0; j < 3; ++j) {
      auto [it, inserted] = keyId.try_emplace(tris[t][j], static_cast<std::uint32_t>(keys.size()));
      if (inserted) keys.push_back(tris[t][j]);
      ids[t][j] = it->second;
    }
  }

  std::unordered_map<std::uint64_t, std::vector<HalfEdge>> edges;
  edges.reserve(tris.size() * 2);
  for (std::uint32_t t = 0; t < tris.size(); ++t) {
    for (std::uint8_t j = 0; j < 3; ++j) {
      const std::uint32_t a = ids[t][j], b = ids[t][(j + 1) % 3];
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
      edges[key].push_back({t, j, owner[t]});
    }
  }

  std::vector<std::uint32_t> parent(tris.size() * 3);
  std::iota(parent.begin(), parent.end(), 0U);
  auto link = [&](const HalfEdge& e, const HalfEdge& f) {
    // e runs a->b, f runs b->a.
    unite(parent, e.tri * 3 + e.corner, f.tri * 3 + (f.corner + 1) % 3);
    unite(parent, e.tri * 3 + (e.corner + 1) % 3, f.tri * 3 + f.corner);
  };
  for (auto& [key, list] : edges) {
    if (list.size() == 2) {
      link(list[0], list[1]);
    } else if (list.size() == 4) {
      std::sort(list.begin(), list.end(),
                [](const HalfEdge& x, const HalfEdge& y) { return x.owner < y.owner; });
      if (list[0].owner != list[1].owner || list[2].owner != list[3].owner) {
        throw std::logic_error("unexpected edge configuration in prism union");
      }
      link(list[0], list[1]);
      link(list[2], list[3]);
    } else {
      throw std::logic_error("unexpected edge configuration in prism union");
    }
  }

  BoundaryMesh mesh;
  mesh.cellCount = cells.size();
  std::vector<std::int64_t> vertexOf(parent.size(), -1);
  const double ys = std::sqrt(3.0) / 6.0;
  mesh.triangles.resize(tris.size());
  for (std::uint32_t t = 0; t < tris.size(); ++t) {
    for (int j = 0; j < 3; ++j) {
      const std::uint32_t root = findRoot(parent, t * 3 + j);
      if (vertexOf[root] < 0) {
        vertexOf[root] = static_cast<std::int64_t>(mesh.vertices.size());
        const VertexKey& k = tris[t][j];
        mesh.vertices.push_back({k.x / 2.0, k.y * ys, k.z / 2.0});
      }
      mesh.triangles[t][j] = static_cast<std::uint32_t>(vertexOf[root]);
    }
  }
  return mesh;
}

BoundaryMesh buildMesh(const Lattice& lattice, const SimState& state, bool smoothing) {
  auto cells = crystalCells(lattice, state);
  if (smoothing) cells = smoothCells(cells, lattice.domain());
  return meshCells(cells);
}

void writeObj(const BoundaryMesh& mesh, std::ostream& out) {
  requireMesh(mesh);
  char buf[128];
  for (const auto& p : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", p[0], p[1], p[2]);
    out << buf;
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

void writePovMesh2(const BoundaryMesh& mesh, std::ostream& out) {
  requireMesh(mesh);
  char buf[128];
  out << "#declare Snowfake = mesh2 {\n  vertex_vectors {\n    " << mesh.vertices.size();
  for (const auto& p : mesh.vertices) {
    std::snprintf(buf, sizeof buf, ",\n    <%.9g, %.9g, %.9g>", p[0], p[1], p[2]);
    out << buf;
  }
  out << "\n  }\n  face_indices {\n    " << mesh.triangles.size();
  for (const auto& t : mesh.triangles) {
    out << ",\n    <" << t[0] << ", " << t[1] << ", " << t[2] << '>';
  }
  out << "\n  }\n}\n";
}

void exportObj(const BoundaryMesh& mesh, const std::filesystem::path& path) {
  requireMesh(mesh);
  auto f = openOutput(path);
  writeObj(mesh, f);
  finish(f, path);
}

void exportPovMesh2(const BoundaryMesh& mesh, const std::filesystem::path& path) {
  requireMesh(mesh);
  auto f = openOutput(path);
  writePovMesh2(mesh, f);
  finish(f, path);
}

}  // namespace snowfake
