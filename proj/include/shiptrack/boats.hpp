#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiptrack/config.hpp"
#include "shiptrack/vec2.hpp"

namespace shiptrack {

// Circular-arc path with independent angular rates per coordinate, as the
// red-boat preset is written (the two rates really do differ).
struct TrigPath {
  Vec2 center{3.0, 2.0};
  double radius = 5.0;
  double omega_x = 0.0;  // rad/hour, x = center.x + radius*cos(omega_x*t)
  double omega_y = 0.0;  // rad/hour, y = center.y + radius*sin(omega_y*t)
};

// p(t) = start + span * (t / horizon).
struct LinePath {
  Vec2 start;
  Vec2 span;
  double horizon = 1.0;
};

// Piecewise-linear waypoints; queries outside [times.front(), times.back()]
// clamp to the nearest endpoint.
struct WaypointPath {
  std::vector<double> times;  // strictly increasing
  std::vector<Vec2> points;
};

struct BoatPath {
  int32_t boat_id = 0;
  std::variant<TrigPath, LinePath, WaypointPath> path;
};

Vec2 boat_position(const BoatPath& boat, double t);
// Same, reporting whether a waypoint query was clamped to an endpoint.
Vec2 boat_position(const BoatPath& boat, double t, bool& clamped);

// Earliest t in [0, t_end] with the boat inside the window: coarse scan at
// `coarse_step`, then bisection to 1e-6 h. nullopt if never inside.
std::optional<double> entry_time(const BoatPath& boat, const Rect& window,
                                 double t_end, double coarse_step);

// Preset names: paper_red, paper_blue, paper_purple, paper_yellow.
BoatPath preset_boat(const std::string& name, double horizon_hours,
                     int32_t boat_id);

// CSV with header boat_id,time_hours,x,y; one path per boat id, times
// strictly increasing within each boat.
std::vector<BoatPath> load_waypoints_csv(const std::string& path);

}  // namespace shiptrack
