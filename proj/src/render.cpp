#include "shiptrack/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "shiptrack/error.hpp"

namespace shiptrack {

namespace {

constexpr double kTruncSigmas = 6.0;

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

// Per-point splat footprint: pixel index ranges plus the 1-d CDF differences
// along each axis. Products dx[i]*dy[j] are the exact pixel masses.
struct Splat {
  int ix0 = 0, ix1 = -1;  // inclusive; empty when ix1 < ix0
  int iy0 = 0, iy1 = -1;
  bool delta = false;     // sigma == 0: unit mass into one pixel
  std::vector<double> dx, dy;
};

Splat build_splat(const RenderPoint& pt, const GridGeom& g) {
  Splat s;
  if (pt.sigma <= 0.0) {
    int ix, iy;
    if (g.locate(pt.pos, ix, iy)) {
      s.delta = true;
      s.ix0 = s.ix1 = ix;
      s.iy0 = s.iy1 = iy;
    }
    return s;
  }
  const double r = kTruncSigmas * pt.sigma;
  s.ix0 = std::max(0, int(std::floor((pt.pos.x - r - g.window.x_min) / g.px)));
  s.ix1 = std::min(g.width - 1,
                   int(std::floor((pt.pos.x + r - g.window.x_min) / g.px)));
  s.iy0 = std::max(0, int(std::floor((g.window.y_max - (pt.pos.y + r)) / g.py)));
  s.iy1 = std::min(g.height - 1,
                   int(std::floor((g.window.y_max - (pt.pos.y - r)) / g.py)));
  if (s.ix1 < s.ix0 || s.iy1 < s.iy0) {
    s.ix1 = s.ix0 - 1;
    return s;
  }
  s.dx.resize(size_t(s.ix1 - s.ix0 + 1));
  for (int ix = s.ix0; ix <= s.ix1; ++ix) {
    const double lo = (g.x_lo(ix) - pt.pos.x) / pt.sigma;
    const double hi = (g.x_lo(ix) + g.px - pt.pos.x) / pt.sigma;
    s.dx[size_t(ix - s.ix0)] = normal_cdf(hi) - normal_cdf(lo);
  }
  s.dy.resize(size_t(s.iy1 - s.iy0 + 1));
  for (int iy = s.iy0; iy <= s.iy1; ++iy) {
    const double hi = (g.y_hi(iy) - pt.pos.y) / pt.sigma;
    const double lo = (g.y_hi(iy) - g.py - pt.pos.y) / pt.sigma;
    s.dy[size_t(iy - s.iy0)] = normal_cdf(hi) - normal_cdf(lo);
  }
  return s;
}

std::vector<Splat> build_splats(std::span<const RenderPoint> points,
                                const GridGeom& g) {
  std::vector<Splat> splats(points.size());
  const int64_t n = int64_t(points.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) splats[size_t(i)] = build_splat(points[size_t(i)], g);
  return splats;
}

FrameGrid base_grid(const GridGeom& g, const FrameGrid* background) {
  if (background) {
    if (background->width != g.width || background->height != g.height)
      throw SimError("BadBackground", "background dims do not match the grid");
    return *background;
  }
  return FrameGrid(g.width, g.height);
}

}  // namespace

GridGeom GridGeom::from_config(const SimConfig& cfg) {
  GridGeom g;
  g.window = cfg.window;
  g.width = cfg.grid.width;
  g.height = cfg.grid.height;
  g.px = cfg.window.width() / cfg.grid.width;
  g.py = cfg.window.height() / cfg.grid.height;
  return g;
}

bool GridGeom::locate(Vec2 pos, int& ix, int& iy) const {
  const int cx = int(std::floor((pos.x - window.x_min) / px));
  const int cy = int(std::floor((window.y_max - pos.y) / py));
  if (cx < 0 || cx >= width || cy < 0 || cy >= height) return false;
  ix = cx;
  iy = cy;
  return true;
}

FrameGrid rasterize_points(std::span<const RenderPoint> points,
                           const GridGeom& geom, const FrameGrid* background) {
  const std::vector<Splat> splats = build_splats(points, geom);
  FrameGrid out = base_grid(geom, background);

  // Rows are independent; within a row each pixel accumulates contributions
  // in point order, so sums are bit-identical to the serial reference and
  // independent of the thread count.
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < geom.height; ++iy) {
    double* row = &out.v[size_t(iy) * geom.width];
    for (const Splat& s : splats) {
      if (iy < s.iy0 || iy > s.iy1) continue;
      if (s.delta) {
        row[s.ix0] += 1.0;
        continue;
      }
      const double wy = s.dy[size_t(iy - s.iy0)];
      const double* dx = s.dx.data();
      for (int ix = s.ix0; ix <= s.ix1; ++ix)
        row[ix] += dx[ix - s.ix0] * wy;
    }
  }
  return out;
}

namespace serial_render {
FrameGrid rasterize_points(std::span<const RenderPoint> points,
                           const GridGeom& geom, const FrameGrid* background) {
  FrameGrid out = base_grid(geom, background);
  for (const RenderPoint& pt : points) {
    const Splat s = build_splat(pt, geom);
    if (s.ix1 < s.ix0) continue;
    if (s.delta) {
      out.at(s.ix0, s.iy0) += 1.0;
      continue;
    }
    for (int iy = s.iy0; iy <= s.iy1; ++iy) {
      const double wy = s.dy[size_t(iy - s.iy0)];
      double* row = &out.v[size_t(iy) * geom.width];
      for (int ix = s.ix0; ix <= s.ix1; ++ix)
        row[ix] += s.dx[size_t(ix - s.ix0)] * wy;
    }
  }
  return out;
}
}  // namespace serial_render

FrameGrid rasterize_frame(const MultiTargetObservation& obs,
                          const MultiTargetState& state, const SimConfig& cfg,
                          const FrameGrid* background, bool parallel) {
  std::unordered_map<uint64_t, double> birth_time;
  birth_time.reserve(state.packets.size());
  for (const Packet& p : state.packets) birth_time[p.id] = p.birth_time;

  std::vector<RenderPoint> points;
  points.reserve(obs.size());
  for (const Observation& o : obs) {  // obs sorted by source packet id
    const auto it = birth_time.find(o.source_packet_id);
    const double age = it == birth_time.end()
                           ? 0.0
                           : std::max(0.0, state.frame_time - it->second);
    points.push_back({o.pos, cfg.sigma_x * std::sqrt(age)});
  }
  const GridGeom geom = GridGeom::from_config(cfg);
  return parallel ? rasterize_points(points, geom, background)
                  : serial_render::rasterize_points(points, geom, background);
}

double sample_grid(const FrameGrid& grid, const GridGeom& geom, Vec2 pos) {
  int ix, iy;
  if (!geom.locate(pos, ix, iy)) return 0.0;
  return grid.at(ix, iy);
}

double video_max(std::span<const FrameGrid> frames) {
  double best = 0.0;
  for (const FrameGrid& f : frames) {
    const int64_t n = int64_t(f.v.size());
    double local = 0.0;
#pragma omp parallel for schedule(static) reduction(max : local)
    for (int64_t i = 0; i < n; ++i) local = std::max(local, f.v[size_t(i)]);
    best = std::max(best, local);
  }
  return best;
}

void normalize_video(std::vector<FrameGrid>& frames) {
  const double max = video_max(frames);
  if (!(max > 0.0))
    throw SimError("AllZeroVideo", "no positive pixel intensity in the video");
  for (FrameGrid& f : frames) {
    const int64_t n = int64_t(f.v.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; ++i) f.v[size_t(i)] /= max;
  }
}

FrameGrid warp_background(const FrameGrid& prev, const GridGeom& geom,
                          const WindField& wind, double t, double dt) {
  FrameGrid out(prev.width, prev.height);
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < prev.height; ++iy) {
    for (int ix = 0; ix < prev.width; ++ix) {
      const Vec2 center{geom.x_lo(ix) + 0.5 * geom.px,
                        geom.y_hi(iy) - 0.5 * geom.py};
      const Vec2 source = center - eval_wind(wind, center, t) * dt;
      int sx, sy;
      out.at(ix, iy) = geom.locate(source, sx, sy) ? prev.at(sx, sy) : 0.0;
    }
  }
  return out;
}

void write_pgm16(const FrameGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("WriteFailed", "cannot write " + path);
  out << "P5\n" << grid.width << " " << grid.height << "\n65535\n";
  std::vector<unsigned char> row(size_t(grid.width) * 2);
  for (int iy = 0; iy < grid.height; ++iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      const double v = std::clamp(grid.at(ix, iy), 0.0, 1.0);
      const auto q = uint16_t(std::lround(65535.0 * v));
      row[size_t(ix) * 2] = (unsigned char)(q >> 8);  // big-endian
      row[size_t(ix) * 2 + 1] = (unsigned char)(q & 0xff);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              std::streamsize(row.size()));
  }
  if (!out) throw SimError("WriteFailed", "short write on " + path);
}

FrameGrid load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError("MissingFile", "cannot open image " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw SimError("BadValue", path + ": not a binary PGM");
  auto next_int = [&]() {
    // Skip whitespace and '#' comment lines between header fields.
    while (true) {
      const int c = in.peek();
      if (c == '#') {
        std::string junk;
        std::getline(in, junk);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    long v = -1;
    in >> v;
    if (!in || v < 0) throw SimError("BadValue", path + ": bad PGM header");
    return v;
  };
  const long w = next_int(), h = next_int(), maxval = next_int();
  if (maxval != 255 && maxval != 65535)
    throw SimError("BadValue", path + ": PGM maxval must be 255 or 65535");
  in.get();  // single whitespace after maxval
  FrameGrid g(int(w), int(h));
  const int bytes = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> buf(size_t(w) * h * bytes);
  in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
  if (in.gcount() != std::streamsize(buf.size()))
    throw SimError("BadValue", path + ": truncated PGM data");
  for (size_t i = 0; i < size_t(w) * h; ++i) {
    const unsigned v = bytes == 2 ? (unsigned(buf[i * 2]) << 8) | buf[i * 2 + 1]
                                  : buf[i];
    g.v[i] = double(v) / double(maxval);
  }
  return g;
}

}  // namespace shiptrack
