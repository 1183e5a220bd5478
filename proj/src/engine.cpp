#include "shiptrack/engine.hpp"

#include <algorithm>

#include "shiptrack/dynamics.hpp"
#include "shiptrack/error.hpp"
#include "shiptrack/observation.hpp"

namespace shiptrack {

namespace {

const Track& find_track(const std::vector<Track>& tracks, uint32_t track_id) {
  for (const Track& t : tracks)
    if (t.track_id == track_id) return t;
  throw SimError("UnknownTrack", "no track with id " + std::to_string(track_id));
}

Event base_event(EventType type, int32_t frame, double t, const Packet& p) {
  Event e;
  e.type = type;
  e.frame = frame;
  e.t = t;
  e.packet = p.id;
  e.track = p.track_id;
  return e;
}

}  // namespace

Engine::Engine(const Scenario& sc, bool parallel)
    : sc_(sc), parallel_(parallel),
      schedules_(make_boat_schedules(sc.boats, sc.cfg)) {}

void Engine::note_clamped(const BoatPath& boat, double t_lagged) {
  bool clamped = false;
  boat_position(boat, t_lagged, clamped);
  if (clamped) ++clamp_count_;
}

void Engine::apply_genesis(MultiTargetState& state, int32_t frame) {
  const SimConfig& cfg = sc_.cfg;
  GenesisOutput g = spontaneous_births(frame, cfg, sc_.boats, schedules_,
                                       cfg.seed, next_track_id_,
                                       next_packet_id_);
  cap_hit_ = cap_hit_ || g.birth_cap_hit;
  for (const Track& t : g.new_tracks) {
    note_clamped(find_boat(sc_.boats, t.boat_id),
                 state.frame_time - cfg.epsilon_lag);
    next_track_id_ = std::max(next_track_id_, t.track_id + 1);
  }
  for (const Packet& p : g.new_packets) {
    next_packet_id_ = std::max(next_packet_id_, p.id + 1);
    Event e = base_event(EventType::Birth, frame, state.frame_time, p);
    e.has_pos = true;
    e.pos = p.pos;
    e.has_death_time = true;
    e.death_time = p.death_time;
    const Track& tr = *std::find_if(
        g.new_tracks.begin(), g.new_tracks.end(),
        [&](const Track& t) { return t.track_id == p.track_id; });
    e.has_boat = true;
    e.boat = tr.boat_id;
    e.has_lifetime = true;
    e.track_lifetime = tr.lifetime;
    e.has_rng = true;
    e.rng = {uint32_t(frame), uint32_t(Mechanism::Birth), uint64_t(tr.boat_id)};
    events_.push_back(e);
  }
  state.tracks.insert(state.tracks.end(), g.new_tracks.begin(),
                      g.new_tracks.end());
  state.packets.insert(state.packets.end(), g.new_packets.begin(),
                       g.new_packets.end());
}

MultiTargetState Engine::initial_state() {
  MultiTargetState s;
  s.frame = 0;
  s.frame_time = 0.0;
  apply_genesis(s, 0);
  return s;
}

MultiTargetState Engine::step(const MultiTargetState& s) {
  const SimConfig& cfg = sc_.cfg;
  const int32_t m = s.frame + 1;
  const double t_next = cfg.frame_time(m);

  MultiTargetState next;
  next.frame = m;
  next.frame_time = t_next;
  next.tracks = s.tracks;

  // 1. Survival at t_{n+1}; packets dead by then are removed now.
  for (const Packet& p : s.packets) {
    if (survives(p, t_next)) {
      next.packets.push_back(p);
    } else {
      events_.push_back(base_event(EventType::Death, m, t_next, p));
    }
  }

  // 2. Exact Gaussian motion of the survivors.
  auto span = std::span<Packet>(next.packets);
  if (parallel_) {
    kernels::advance_packets(span, s.frame_time, t_next, sc_.wind, cfg.sigma_x,
                             cfg.seed, uint32_t(m));
  } else {
    kernels::serial::advance_packets(span, s.frame_time, t_next, sc_.wind,
                                     cfg.sigma_x, cfg.seed, uint32_t(m));
  }
  for (Packet& p : next.packets) p.is_head = false;

  // 3. Spawn from the previous frame's heads. Spawning is independent of the
  // head's own survival (the union components are independent), so heads are
  // taken from s, not from the survivor set.
  for (const Packet& head : s.packets) {
    if (!head.is_head) continue;
    const Track& track = find_track(next.tracks, head.track_id);
    const BoatPath& boat = find_boat(sc_.boats, track.boat_id);
    auto spawned =
        spawn(head, boat, track, m, cfg, cfg.seed, next_packet_id_);
    if (!spawned) continue;
    note_clamped(boat, t_next - cfg.epsilon_lag);
    ++next_packet_id_;
    Event e = base_event(EventType::Spawn, m, t_next, *spawned);
    e.has_pos = true;
    e.pos = spawned->pos;
    e.has_parent = true;
    e.parent = head.id;
    e.has_death_time = true;
    e.death_time = spawned->death_time;
    e.has_rng = true;
    e.rng = {uint32_t(m), uint32_t(Mechanism::Spawn), head.id};
    events_.push_back(e);
    next.packets.push_back(*spawned);
  }

  // 4. Spontaneous births due this frame.  5. Only packets born in
  // (t_n, t_{n+1}] carry the head flag, which genesis/spawn already set.
  apply_genesis(next, m);
  return next;
}

void Engine::log_observations(const MultiTargetObservation& obs, int32_t frame,
                              double t) {
  for (const Observation& o : obs) {
    Event e;
    e.type = EventType::Observe;
    e.frame = frame;
    e.t = t;
    e.packet = o.source_packet_id;
    e.track = o.source_track_id;
    e.has_pos = true;
    e.pos = o.pos;
    e.has_rng = true;
    e.rng = {uint32_t(frame), uint32_t(Mechanism::Observe), o.source_packet_id};
    events_.push_back(e);
  }
}

RunResult simulate(const Scenario& sc, const RunOptions& opts) {
  require_valid(sc.cfg);
  const SimConfig& cfg = sc.cfg;
  const GridGeom geom = GridGeom::from_config(cfg);
  const bool render_needed = opts.render_frames || cfg.thresholds_active() ||
                             sc.background.has_value();

  Engine eng(sc, opts.parallel);
  RunResult r;
  r.states.reserve(size_t(cfg.n_frames));
  r.observations.reserve(size_t(cfg.n_frames));
  if (opts.render_frames) r.frames.reserve(size_t(cfg.n_frames));

  std::optional<FrameGrid> background = sc.background;
  FrameGrid prev_raw;
  bool have_prev = false;

  for (int32_t n = 0; n < cfg.n_frames; ++n) {
    MultiTargetState state =
        n == 0 ? eng.initial_state() : eng.step(r.states.back());

    // Detection gate: the previous frame's raw render; frame 0 sees the
    // background only.
    const FrameGrid* intensity = nullptr;
    if (have_prev) {
      intensity = &prev_raw;
    } else if (background) {
      intensity = &*background;
    }
    MultiTargetObservation obs =
        observe_state(state, intensity, geom, cfg, cfg.seed, opts.parallel);
    eng.log_observations(obs, state.frame, state.frame_time);

    if (render_needed) {
      if (background && n > 0)
        background = warp_background(*background, geom, sc.wind,
                                     cfg.frame_time(n - 1), cfg.dt);
      FrameGrid raw =
          rasterize_frame(obs, state, cfg, background ? &*background : nullptr,
                          opts.parallel);
      if (opts.render_frames) r.frames.push_back(raw);
      prev_raw = std::move(raw);
      have_prev = true;
    }

    r.states.push_back(std::move(state));
    r.observations.push_back(std::move(obs));
  }

  if (!r.frames.empty()) r.raw_max_intensity = video_max(r.frames);
  r.events = eng.take_events();
  r.boat_clamp_count = eng.clamp_count();
  r.birth_cap_hit = eng.birth_cap_hit();
  return r;
}

RunResult run(const Scenario& sc, const RunOptions& opts) {
  RunResult r = simulate(sc, opts);
  if (opts.render_frames) {
    normalize_video(r.frames);  // throws AllZeroVideo when nothing visible
    r.frames_normalized = true;
  }
  return r;
}

}  // namespace shiptrack
