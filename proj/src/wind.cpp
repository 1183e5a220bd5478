#include "shiptrack/wind.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "shiptrack/error.hpp"

namespace shiptrack {

CircularWind CircularWind::for_horizon(double horizon_hours, bool clockwise) {
  CircularWind w;
  w.speed_scale = 10.0 * 3.14159265358979323846 / (4.0 * horizon_hours);
  w.clockwise = clockwise;
  return w;
}

namespace {

// Index of the cell containing v on a strictly increasing axis, clamped to
// [0, n-2]; also returns the interpolation weight in [0,1].
struct AxisHit {
  size_t i;
  double w;
  bool inside;
};

AxisHit locate(const std::vector<double>& axis, double v) {
  if (axis.size() == 1) return {0, 0.0, v == axis[0]};
  const bool inside = v >= axis.front() && v <= axis.back();
  auto it = std::upper_bound(axis.begin(), axis.end(), v);
  size_t hi = size_t(it - axis.begin());
  hi = std::clamp<size_t>(hi, 1, axis.size() - 1);
  const size_t lo = hi - 1;
  double w = (v - axis[lo]) / (axis[hi] - axis[lo]);
  w = std::clamp(w, 0.0, 1.0);
  return {lo, w, inside};
}

Vec2 eval_gridded(const GriddedWind& g, Vec2 pos, double t) {
  const AxisHit ht = locate(g.ts, t);
  const AxisHit hx = locate(g.xs, pos.x);
  const AxisHit hy = locate(g.ys, pos.y);
  if (!g.clamp && !(ht.inside && hx.inside && hy.inside))
    throw SimError("OutOfDomain", "gridded wind query outside the lattice hull");

  auto bilinear = [&](size_t it) {
    const size_t x1 = g.xs.size() == 1 ? hx.i : hx.i + 1;
    const size_t y1 = g.ys.size() == 1 ? hy.i : hy.i + 1;
    const Vec2 v00 = g.at(it, hy.i, hx.i);
    const Vec2 v01 = g.at(it, hy.i, x1);
    const Vec2 v10 = g.at(it, y1, hx.i);
    const Vec2 v11 = g.at(it, y1, x1);
    const Vec2 bottom = v00 * (1.0 - hx.w) + v01 * hx.w;
    const Vec2 top = v10 * (1.0 - hx.w) + v11 * hx.w;
    return bottom * (1.0 - hy.w) + top * hy.w;
  };

  const Vec2 a = bilinear(ht.i);
  if (g.ts.size() == 1) return a;
  const Vec2 b = bilinear(ht.i + 1);
  return a * (1.0 - ht.w) + b * ht.w;
}

}  // namespace

Vec2 eval_wind(const WindField& field, Vec2 pos, double t) {
  return std::visit(
      [&](const auto& f) -> Vec2 {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformWind>) {
          return f.velocity;
        } else if constexpr (std::is_same_v<T, CircularWind>) {
          const Vec2 r = pos - f.center_velocity * t;
          // speed * unit tangent == speed_scale * (-r.y, r.x); no division,
          // so the field is well defined (zero) at the center.
          const Vec2 ccw{-r.y * f.speed_scale, r.x * f.speed_scale};
          return f.clockwise ? Vec2{-ccw.x, -ccw.y} : ccw;
        } else {
          return eval_gridded(f, pos, t);
        }
      },
      field.field);
}

WindField load_gridded_wind_csv(const std::string& path, bool clamp) {
  std::ifstream in(path);
  if (!in) throw SimError("MissingFile", "cannot open wind file " + path);
  std::string line;
  if (!std::getline(in, line))
    throw SimError("BadValue", "empty wind file " + path);
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](char c) { return c == ' ' || c == '\r'; }),
            s.end());
    return s;
  };
  if (strip(line) != "t_hours,x,y,u,v")
    throw SimError("BadValue", "wind CSV header must be t_hours,x,y,u,v");

  struct Node {
    double t, x, y;
    Vec2 uv;
  };
  std::vector<Node> nodes;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    std::istringstream row(line);
    Node n;
    char c1, c2, c3, c4;
    if (!(row >> n.t >> c1 >> n.x >> c2 >> n.y >> c3 >> n.uv.x >> c4 >> n.uv.y) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
      throw SimError("BadValue",
                     path + ":" + std::to_string(lineno) + ": bad wind row");
    if (!std::isfinite(n.uv.x) || !std::isfinite(n.uv.y))
      throw SimError("BadValue", "non-finite wind velocity at line " +
                                     std::to_string(lineno));
    nodes.push_back(n);
  }
  if (nodes.empty()) throw SimError("BadValue", "wind file has no data rows");

  auto axis_of = [](std::vector<double> vals) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
  };
  GriddedWind g;
  g.clamp = clamp;
  g.source = path;
  {
    std::vector<double> t, x, y;
    for (const auto& n : nodes) {
      t.push_back(n.t);
      x.push_back(n.x);
      y.push_back(n.y);
    }
    g.ts = axis_of(t);
    g.xs = axis_of(x);
    g.ys = axis_of(y);
  }
  const size_t expect = g.ts.size() * g.xs.size() * g.ys.size();
  if (nodes.size() != expect)
    throw SimError("BadValue", "wind lattice incomplete: " +
                                   std::to_string(nodes.size()) + " rows, " +
                                   std::to_string(expect) + " lattice nodes");

  auto index_on = [](const std::vector<double>& axis, double v) {
    const auto it = std::lower_bound(axis.begin(), axis.end(), v);
    return size_t(it - axis.begin());
  };
  g.uv.assign(expect, Vec2{});
  std::vector<char> filled(expect, 0);
  for (const auto& n : nodes) {
    const size_t idx = (index_on(g.ts, n.t) * g.ys.size() + index_on(g.ys, n.y)) *
                           g.xs.size() +
                       index_on(g.xs, n.x);
    if (filled[idx])
      throw SimError("BadValue", "duplicate wind lattice node in " + path);
    filled[idx] = 1;
    g.uv[idx] = n.uv;
  }
  return WindField{std::move(g)};
}

}  // namespace shiptrack
