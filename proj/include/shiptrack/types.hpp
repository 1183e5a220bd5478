#pragma once

#include <cstdint>
#include <vector>

#include "shiptrack/vec2.hpp"

namespace shiptrack {

// A latent aerosol emission burst; one target of the multi-target state.
// Death time is sampled once at creation, so survival checks are
// deterministic replays of the latent lifetime.
struct Packet {
  uint64_t id = 0;
  uint32_t track_id = 0;
  Vec2 pos;
  double birth_time = 0.0;
  double death_time = 0.0;
  int32_t birth_frame = 0;  // frames are exact integers; times derive from them
  bool is_head = false;     // born in the most recent interval, spawn-eligible
};

// One emission track (one boat's aerosol stream).
struct Track {
  uint32_t track_id = 0;
  int32_t boat_id = 0;
  double lifetime = 0.0;  // T_d: mean packet lifetime for this track, hours
  double origin_time = 0.0;
  int32_t origin_frame = 0;
};

// Finite set of live packets at one frame time, grouped by track id.
struct MultiTargetState {
  int32_t frame = 0;
  double frame_time = 0.0;
  std::vector<Packet> packets;  // sorted by id
  std::vector<Track> tracks;    // sorted by track_id; never removed
};

// A sensor-side point. source ids exist for the validation log only; the
// downstream observer is assumed to have no packet association.
struct Observation {
  Vec2 pos;
  uint64_t source_packet_id = 0;
  uint32_t source_track_id = 0;
  double frame_time = 0.0;
};

using MultiTargetObservation = std::vector<Observation>;

}  // namespace shiptrack
