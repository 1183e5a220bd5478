#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiptrack/boats.hpp"
#include "shiptrack/config.hpp"
#include "shiptrack/genesis.hpp"
#include "shiptrack/render.hpp"
#include "shiptrack/types.hpp"
#include "shiptrack/wind.hpp"

namespace shiptrack {

// Everything a run needs. The background, when set, is advected by the wind
// each frame and added to rendered intensity.
struct Scenario {
  SimConfig cfg;
  WindField wind;
  std::vector<BoatPath> boats;
  std::optional<FrameGrid> background;
};

enum class EventType { Birth, Spawn, Death, Observe };

// RNG substream identity recorded with each stochastic event.
struct RngKey {
  uint32_t frame = 0;
  uint32_t tag = 0;
  uint64_t entity = 0;
};

struct Event {
  EventType type = EventType::Birth;
  int32_t frame = 0;
  double t = 0.0;
  uint64_t packet = 0;
  uint32_t track = 0;
  bool has_pos = false;
  Vec2 pos;
  bool has_parent = false;
  uint64_t parent = 0;
  bool has_death_time = false;
  double death_time = 0.0;
  bool has_boat = false;
  int32_t boat = 0;
  bool has_lifetime = false;
  double track_lifetime = 0.0;
  bool has_rng = false;
  RngKey rng;
};

// Per-frame HMM update with fixed order: survive -> move -> spawn -> birth ->
// head flags. The three contributions draw from independent substreams, so
// the Eq.-(5)-style union decomposition holds exactly.
class Engine {
 public:
  Engine(const Scenario& sc, bool parallel);

  // State at frame 0: empty plus any spontaneous births already due.
  MultiTargetState initial_state();

  // Advances s.frame -> s.frame + 1, appending death/spawn/birth events.
  MultiTargetState step(const MultiTargetState& s);

  void log_observations(const MultiTargetObservation& obs, int32_t frame,
                        double t);

  const std::vector<Event>& events() const { return events_; }
  std::vector<Event> take_events() { return std::move(events_); }
  const std::vector<BoatSchedule>& schedules() const { return schedules_; }
  uint64_t clamp_count() const { return clamp_count_; }
  bool birth_cap_hit() const { return cap_hit_; }

 private:
  void apply_genesis(MultiTargetState& state, int32_t frame);
  void note_clamped(const BoatPath& boat, double t_lagged);

  const Scenario& sc_;
  bool parallel_;
  std::vector<BoatSchedule> schedules_;
  std::vector<Event> events_;
  uint32_t next_track_id_ = 0;
  uint64_t next_packet_id_ = 0;
  uint64_t clamp_count_ = 0;
  bool cap_hit_ = false;
};

struct RunOptions {
  bool parallel = true;      // OpenMP kernels vs serial reference path
  bool render_frames = true; // keep rendered frames in the result
};

struct RunResult {
  std::vector<MultiTargetState> states;
  std::vector<MultiTargetObservation> observations;
  std::vector<FrameGrid> frames;  // raw from simulate(), normalized by run()
  bool frames_normalized = false;
  double raw_max_intensity = 0.0;
  std::vector<Event> events;
  uint64_t boat_clamp_count = 0;
  bool birth_cap_hit = false;
};

// Full run with raw (unnormalized) frames; never raises AllZeroVideo.
RunResult simulate(const Scenario& sc, const RunOptions& opts = {});

// simulate() plus video-max normalization. Throws SimError("AllZeroVideo")
// when frames were requested and nothing was ever visible.
RunResult run(const Scenario& sc, const RunOptions& opts = {});

}  // namespace shiptrack
