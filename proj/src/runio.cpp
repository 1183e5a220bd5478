#include "shiptrack/runio.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "shiptrack/error.hpp"

namespace shiptrack {

std::string fmt_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

namespace {

const char* event_name(EventType t) {
  switch (t) {
    case EventType::Birth: return "birth";
    case EventType::Spawn: return "spawn";
    case EventType::Death: return "death";
    case EventType::Observe: return "observe";
  }
  return "?";
}

nlohmann::json wind_to_json(const WindField& w) {
  return std::visit(
      [](const auto& f) -> nlohmann::json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformWind>) {
          return {{"kind", "uniform"}, {"u", f.velocity.x}, {"v", f.velocity.y}};
        } else if constexpr (std::is_same_v<T, CircularWind>) {
          return {{"kind", "circular"},
                  {"speed_scale", f.speed_scale},
                  {"center_velocity", {f.center_velocity.x, f.center_velocity.y}},
                  {"clockwise", f.clockwise}};
        } else {
          return {{"kind", "gridded"}, {"source", f.source}, {"clamp", f.clamp}};
        }
      },
      w.field);
}

nlohmann::json boat_to_json(const BoatPath& b) {
  nlohmann::json j = std::visit(
      [](const auto& p) -> nlohmann::json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TrigPath>) {
          return {{"kind", "trig"},
                  {"center", {p.center.x, p.center.y}},
                  {"radius", p.radius},
                  {"omega_x", p.omega_x},
                  {"omega_y", p.omega_y}};
        } else if constexpr (std::is_same_v<T, LinePath>) {
          return {{"kind", "line"},
                  {"start", {p.start.x, p.start.y}},
                  {"span", {p.span.x, p.span.y}},
                  {"horizon", p.horizon}};
        } else {
          nlohmann::json times = nlohmann::json::array();
          nlohmann::json points = nlohmann::json::array();
          for (size_t i = 0; i < p.times.size(); ++i) {
            times.push_back(p.times[i]);
            points.push_back({p.points[i].x, p.points[i].y});
          }
          return {{"kind", "waypoints"}, {"times", times}, {"points", points}};
        }
      },
      b.path);
  j["boat_id"] = b.boat_id;
  return j;
}

nlohmann::json config_to_json(const SimConfig& c) {
  nlohmann::json j{
      {"n_frames", c.n_frames},
      {"dt", c.dt},
      {"epsilon_lag", c.epsilon_lag},
      {"sigma_x", c.sigma_x},
      {"sigma_beta", c.sigma_beta},
      {"lambda_T", c.lambda_T},
      {"sigma_pd", c.sigma_pd},
      {"window", {c.window.x_min, c.window.y_min, c.window.x_max, c.window.y_max}},
      {"grid", {c.grid.width, c.grid.height}},
      {"seed", c.seed},
      {"max_birth_packets", c.max_birth_packets},
  };
  if (c.sigma_b) j["sigma_b"] = *c.sigma_b;
  if (c.lambda_gamma) j["lambda_gamma"] = *c.lambda_gamma;
  if (c.iota_low) j["iota_low"] = *c.iota_low;
  if (c.iota_high) j["iota_high"] = *c.iota_high;
  return j;
}

}  // namespace

std::string event_to_jsonl(const Event& e) {
  std::string s = "{\"t\":" + fmt_double(e.t);
  s += ",\"frame\":" + std::to_string(e.frame);
  s += ",\"event\":\"";
  s += event_name(e.type);
  s += "\",\"packet\":" + std::to_string(e.packet);
  s += ",\"track\":" + std::to_string(e.track);
  if (e.has_pos)
    s += ",\"pos\":[" + fmt_double(e.pos.x) + "," + fmt_double(e.pos.y) + "]";
  if (e.has_parent) s += ",\"parent\":" + std::to_string(e.parent);
  if (e.has_death_time) s += ",\"death_time\":" + fmt_double(e.death_time);
  if (e.has_boat) s += ",\"boat\":" + std::to_string(e.boat);
  if (e.has_lifetime)
    s += ",\"track_lifetime\":" + fmt_double(e.track_lifetime);
  if (e.has_rng)
    s += ",\"rng\":[" + std::to_string(e.rng.frame) + "," +
         std::to_string(e.rng.tag) + "," + std::to_string(e.rng.entity) + "]";
  s += "}";
  return s;
}

void write_run_dir(const RunResult& result, const Scenario& sc,
                   const std::string& dir, const WriteOptions& opts) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw SimError("WriteFailed", "cannot create directory " + dir);

  {
    std::ofstream out(dir + "/events.jsonl", std::ios::binary);
    if (!out) throw SimError("WriteFailed", "cannot write events.jsonl");
    for (const Event& e : result.events) out << event_to_jsonl(e) << "\n";
  }

  {
    std::ofstream out(dir + "/points.csv", std::ios::binary);
    if (!out) throw SimError("WriteFailed", "cannot write points.csv");
    out << "frame,t_hours,kind,track_id,packet_id,x,y\n";
    for (size_t n = 0; n < result.states.size(); ++n) {
      const MultiTargetState& s = result.states[n];
      const std::string stem =
          std::to_string(s.frame) + "," + fmt_double(s.frame_time);
      for (const Packet& p : s.packets)
        out << stem << ",state," << p.track_id << "," << p.id << ","
            << fmt_double(p.pos.x) << "," << fmt_double(p.pos.y) << "\n";
      for (const Observation& o : result.observations[n])
        out << stem << ",obs," << o.source_track_id << ","
            << o.source_packet_id << "," << fmt_double(o.pos.x) << ","
            << fmt_double(o.pos.y) << "\n";
    }
  }

  {
    nlohmann::json meta{
        {"config", config_to_json(sc.cfg)},
        {"wind", wind_to_json(sc.wind)},
        {"boats", nlohmann::json::array()},
        {"frames_rendered", opts.write_frames && !result.frames.empty()},
        {"frames_normalized", result.frames_normalized},
        {"frame_format", "pgm16"},
        {"boat_clamp_count", result.boat_clamp_count},
        {"birth_cap_hit", result.birth_cap_hit},
    };
    for (const BoatPath& b : sc.boats) meta["boats"].push_back(boat_to_json(b));
    if (!result.frames.empty())
      meta["raw_max_intensity"] = result.raw_max_intensity;
    else
      meta["raw_max_intensity"] = nullptr;
    std::ofstream out(dir + "/run_meta.json", std::ios::binary);
    if (!out) throw SimError("WriteFailed", "cannot write run_meta.json");
    out << meta.dump(2) << "\n";
  }

  if (opts.write_frames) {
    char name[32];
    for (size_t n = 0; n < result.frames.size(); ++n) {
      std::snprintf(name, sizeof name, "frame_%04zu.pgm", n);
      write_pgm16(result.frames[n], dir + "/" + name);
    }
  }
}

}  // namespace shiptrack
