#include "snowfake/raster.hpp"

#include <climits>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace snowfake {

std::array<int, 2> cellAt(double x, double y) {
  const double v = 2.0 * y / std::sqrt(3.0);
  const double u = x - v / 2.0;
  const double s = -u - v;
  double ru = std::round(u), rv = std::round(v), rs = std::round(s);
  const double du = std::abs(ru - u), dv = std::abs(rv - v), ds = std::abs(rs - s);
  if (du > dv && du > ds) {
    ru = -rv - rs;
  } else if (dv > ds) {
    rv = -ru - rs;
  }
  return {static_cast<int>(ru), static_cast<int>(rv)};
}

GrayImage renderHeightmap(const Lattice& lattice, const SimState& state, int pixelsPerUnit) {
  if (pixelsPerUnit < 1) throw std::invalid_argument("pixels per unit must be positive");
  const Domain& d = lattice.domain();
  const int R = d.radius;
  const int H = d.halfHeight;
  const int side = 2 * R + 1;

  std::vector<int> top(static_cast<std::size_t>(side) * side, INT_MIN);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (!state.attached[i]) continue;
    for (const auto& s : groupImages(lattice.coord(i), d.mode)) {
      int& slot = top[static_cast<std::size_t>(s.v + R) * side + (s.u + R)];
      slot = std::max(slot, s.z);
    }
  }

  const double halfWidth = R + 0.5;
  const double halfHeight = R * std::sqrt(3.0) / 2.0 + 1.0 / std::sqrt(3.0);
  GrayImage img;
  img.width = static_cast<int>(std::ceil(2 * halfWidth * pixelsPerUnit));
  img.height = static_cast<int>(std::ceil(2 * halfHeight * pixelsPerUnit));
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
  for (int py = 0; py < img.height; ++py) {
    const double y = halfHeight - (py + 0.5) / pixelsPerUnit;
    for (int px = 0; px < img.width; ++px) {
      const double x = -halfWidth + (px + 0.5) / pixelsPerUnit;
      const auto [u, v] = cellAt(x, y);
      if (hexDistance(u, v) > R) continue;
      const int z = top[static_cast<std::size_t>(v + R) * side + (u + R)];
      if (z == INT_MIN) continue;
      const double level = H == 0 ? 254.0 : std::round(254.0 * (z + H) / (2.0 * H));
      img.pixels[static_cast<std::size_t>(py) * img.width + px] =
          static_cast<std::uint8_t>(1 + level);
    }
  }
  return img;
}

void writePgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace snowfake
