#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "snowfake/engine.hpp"
#include "snowfake/lattice.hpp"

namespace snowfake {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top row first

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Top view over the bounding box of the hex domain, `pixelsPerUnit` pixels per
/// lattice spacing. A column whose highest crystal cell is z maps to
/// 1 + round(254 (z + H) / (2H)) (255 when H = 0); empty columns are 0.
GrayImage renderHeightmap(const Lattice& lattice, const SimState& state, int pixelsPerUnit = 4);

/// Binary PGM (P5). Throws std::runtime_error on I/O failure.
void writePgm(const GrayImage& image, const std::filesystem::path& path);

/// Axial cell containing the plane point (x, y).
std::array<int, 2> cellAt(double x, double y);

}  // namespace snowfake
