#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shiptrack/config.hpp"
#include "shiptrack/types.hpp"
#include "shiptrack/wind.hpp"

namespace shiptrack {

// Row-major intensity grid; row 0 is the window top (y_max), image style.
struct FrameGrid {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  FrameGrid() = default;
  FrameGrid(int w, int h) : width(w), height(h), v(size_t(w) * h, 0.0) {}
  double& at(int ix, int iy) { return v[size_t(iy) * width + ix]; }
  double at(int ix, int iy) const { return v[size_t(iy) * width + ix]; }
};

// Window-to-pixel mapping shared by the rasterizer and grid sampling.
struct GridGeom {
  Rect window;
  int width = 0;
  int height = 0;
  double px = 0.0;  // pixel width in position units
  double py = 0.0;

  static GridGeom from_config(const SimConfig& cfg);
  // Pixel x-bounds: [x_lo(ix), x_lo(ix)+px]; y rows count down from y_max.
  double x_lo(int ix) const { return window.x_min + ix * px; }
  double y_hi(int iy) const { return window.y_max - iy * py; }
  // Containing pixel, or false if pos is outside the half-open grid.
  bool locate(Vec2 pos, int& ix, int& iy) const;
};

// One Gaussian splat: observation position with the source packet's
// age-grown isotropic sigma. Order follows packet id for determinism.
struct RenderPoint {
  Vec2 pos;
  double sigma = 0.0;
};

// Accumulates, per pixel, the exact integral of each point's Gaussian over
// the pixel rectangle (product of 1-d normal CDF differences). sigma == 0
// deposits unit mass in the containing pixel. Contributions beyond 6 sigma
// are dropped (mass < 4e-9 per point). Optional background added.
FrameGrid rasterize_points(std::span<const RenderPoint> points,
                           const GridGeom& geom,
                           const FrameGrid* background = nullptr);
namespace serial_render {
FrameGrid rasterize_points(std::span<const RenderPoint> points,
                           const GridGeom& geom,
                           const FrameGrid* background = nullptr);
}

// Spec-level entry point: builds render points from observations, looking up
// each source packet's age in the state.
FrameGrid rasterize_frame(const MultiTargetObservation& obs,
                          const MultiTargetState& state, const SimConfig& cfg,
                          const FrameGrid* background = nullptr,
                          bool parallel = true);

// Intensity of the pixel containing pos; 0 outside the grid.
double sample_grid(const FrameGrid& grid, const GridGeom& geom, Vec2 pos);

double video_max(std::span<const FrameGrid> frames);
// Divides every pixel by the global max; the output max is exactly 1.0.
// Throws AllZeroVideo when no positive intensity exists anywhere.
void normalize_video(std::vector<FrameGrid>& frames);

// Semi-Lagrangian nearest-neighbor advection of a background image by one
// frame interval; source pixels pulled from outside the grid read as 0.
FrameGrid warp_background(const FrameGrid& prev, const GridGeom& geom,
                          const WindField& wind, double t, double dt);

// Binary PGM, P5 / maxval 65535 / big-endian 16-bit, intensity in [0,1].
void write_pgm16(const FrameGrid& grid, const std::string& path);
FrameGrid load_pgm(const std::string& path);

}  // namespace shiptrack
