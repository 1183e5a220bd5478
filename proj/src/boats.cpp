#include "shiptrack/boats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "shiptrack/error.hpp"

namespace shiptrack {

namespace {

Vec2 eval_waypoints(const WaypointPath& w, double t, bool& clamped) {
  if (w.times.empty()) throw SimError("EmptyPath", "waypoint path has no points");
  clamped = false;
  if (t <= w.times.front()) {
    clamped = t < w.times.front();
    return w.points.front();
  }
  if (t >= w.times.back()) {
    clamped = t > w.times.back();
    return w.points.back();
  }
  const auto it = std::upper_bound(w.times.begin(), w.times.end(), t);
  const size_t hi = size_t(it - w.times.begin());
  const size_t lo = hi - 1;
  const double f = (t - w.times[lo]) / (w.times[hi] - w.times[lo]);
  return w.points[lo] * (1.0 - f) + w.points[hi] * f;
}

}  // namespace

Vec2 boat_position(const BoatPath& boat, double t, bool& clamped) {
  clamped = false;
  return std::visit(
      [&](const auto& p) -> Vec2 {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TrigPath>) {
          return {p.center.x + p.radius * std::cos(p.omega_x * t),
                  p.center.y + p.radius * std::sin(p.omega_y * t)};
        } else if constexpr (std::is_same_v<T, LinePath>) {
          return p.start + p.span * (t / p.horizon);
        } else {
          return eval_waypoints(p, t, clamped);
        }
      },
      boat.path);
}

Vec2 boat_position(const BoatPath& boat, double t) {
  bool clamped = false;
  return boat_position(boat, t, clamped);
}

std::optional<double> entry_time(const BoatPath& boat, const Rect& window,
                                 double t_end, double coarse_step) {
  auto inside = [&](double t) { return window.contains(boat_position(boat, t)); };
  if (inside(0.0)) return 0.0;

  // Coarse scan for the first inside sample, then bisect the bracket.
  double prev = 0.0;
  double hit = -1.0;
  for (double t = coarse_step; t <= t_end + 0.5 * coarse_step; t += coarse_step) {
    const double tc = std::min(t, t_end);
    if (inside(tc)) {
      hit = tc;
      break;
    }
    prev = tc;
    if (tc >= t_end) break;
  }
  if (hit < 0.0) return std::nullopt;

  double lo = prev, hi = hit;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

BoatPath preset_boat(const std::string& name, double horizon_hours,
                     int32_t boat_id) {
  constexpr double kPi = 3.14159265358979323846;
  const double h = horizon_hours;
  if (name == "paper_red") {
    TrigPath p;
    p.center = {3.0, 2.0};
    p.radius = 5.0;
    p.omega_x = kPi / (10.0 * h);
    p.omega_y = kPi / (2.0 * h);
    return {boat_id, p};
  }
  if (name == "paper_blue") return {boat_id, LinePath{{1.0, 18.0}, {5.0, -2.0}, h}};
  if (name == "paper_purple") return {boat_id, LinePath{{1.0, 18.0}, {5.0, -10.0}, h}};
  if (name == "paper_yellow") return {boat_id, LinePath{{-4.0, 10.0}, {10.0, 2.0}, h}};
  throw SimError("UnknownPreset", "no boat preset named '" + name + "'");
}

std::vector<BoatPath> load_waypoints_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("MissingFile", "cannot open waypoint file " + path);
  std::string line;
  if (!std::getline(in, line))
    throw SimError("BadValue", "empty waypoint file " + path);
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](char c) { return c == ' ' || c == '\r'; }),
            s.end());
    return s;
  };
  if (strip(line) != "boat_id,time_hours,x,y")
    throw SimError("BadValue", "waypoint CSV header must be boat_id,time_hours,x,y");

  std::map<int32_t, WaypointPath> paths;  // ordered by boat id
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    std::istringstream row(line);
    int32_t id;
    double t, x, y;
    char c1, c2, c3;
    if (!(row >> id >> c1 >> t >> c2 >> x >> c3 >> y) || c1 != ',' ||
        c2 != ',' || c3 != ',')
      throw SimError("BadValue",
                     path + ":" + std::to_string(lineno) + ": bad waypoint row");
    if (!std::isfinite(x) || !std::isfinite(y))
      throw SimError("BadValue", "non-finite waypoint at line " +
                                     std::to_string(lineno));
    auto& wp = paths[id];
    if (!wp.times.empty() && t <= wp.times.back())
      throw SimError("BadValue", "waypoint times must be strictly increasing "
                                 "for boat " + std::to_string(id));
    wp.times.push_back(t);
    wp.points.push_back({x, y});
  }
  std::vector<BoatPath> out;
  for (auto& [id, wp] : paths) out.push_back({id, std::move(wp)});
  if (out.empty()) throw SimError("BadValue", "waypoint file has no rows");
  return out;
}

}  // namespace shiptrack
