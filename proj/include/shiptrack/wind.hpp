#pragma once

#include <string>
#include <variant>
#include <vector>

#include "shiptrack/vec2.hpp"

namespace shiptrack {

struct UniformWind {
  Vec2 velocity;
};

// Tangential speed field s(p,t) = speed_scale * |p - c(t)| about the drifting
// center c(t) = center_velocity * t. Counterclockwise unless `clockwise`.
struct CircularWind {
  double speed_scale = 0.0;  // 10*pi / (4 * horizon_hours)
  Vec2 center_velocity{0.2, -0.1};
  bool clockwise = false;

  static CircularWind for_horizon(double horizon_hours, bool clockwise = false);
};

// Regular (t, x, y) lattice of velocities. Bilinear in space, linear in time.
// Queries outside the hull clamp to the nearest node unless clamp is false,
// in which case they raise OutOfDomain.
struct GriddedWind {
  std::vector<double> ts, xs, ys;  // strictly increasing axes
  std::vector<Vec2> uv;            // [it][iy][ix]
  bool clamp = true;
  std::string source;              // file it was loaded from, for run_meta

  const Vec2& at(size_t it, size_t iy, size_t ix) const {
    return uv[(it * ys.size() + iy) * xs.size() + ix];
  }
};

struct WindField {
  std::variant<UniformWind, CircularWind, GriddedWind> field = UniformWind{};
};

// Drift function mu(pos, t) in position units per hour.
Vec2 eval_wind(const WindField& field, Vec2 pos, double t);

// CSV with header t_hours,x,y,u,v on a complete regular lattice.
WindField load_gridded_wind_csv(const std::string& path, bool clamp = true);

}  // namespace shiptrack
