#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shiptrack/boats.hpp"
#include "shiptrack/config.hpp"
#include "shiptrack/types.hpp"

namespace shiptrack {

// Per-boat emission schedule, fixed before the run: when the boat enters the
// window and at which frame its first (lag-shifted) emission is due.
struct BoatSchedule {
  int32_t boat_id = 0;
  std::optional<double> entry;  // entry time into the window, hours
  int32_t birth_frame = -1;     // frame index of the spontaneous birth; -1 never
};

std::vector<BoatSchedule> make_boat_schedules(std::span<const BoatPath> boats,
                                              const SimConfig& cfg);

struct GenesisOutput {
  std::vector<Track> new_tracks;
  std::vector<Packet> new_packets;
  bool birth_cap_hit = false;
};

// Spontaneous Poisson births due at frame `frame`: for each boat whose first
// emission falls in (t_{n-1}, t_n], a new track with an exponential lifetime
// and N_b packets placed N2(boat(t_n - epsilon), sigma_b^2 I). N_b is
// Poisson(lambda_gamma) when configured, else exactly one.
GenesisOutput spontaneous_births(int32_t frame, const SimConfig& cfg,
                                 std::span<const BoatPath> boats,
                                 std::span<const BoatSchedule> schedules,
                                 uint64_t seed, uint32_t next_track_id,
                                 uint64_t next_packet_id);

// Bernoulli spawn from one head for frame `frame` (time t_n): at most one
// packet, placed N2(boat(t_n - epsilon), epsilon * sigma_beta^2 I), with a
// death time drawn from the track's lifetime law. Empty when the head is not
// spawn-eligible or the boat has stopped emitting (t_n > horizon).
std::optional<Packet> spawn(const Packet& head, const BoatPath& boat,
                            const Track& track, int32_t frame,
                            const SimConfig& cfg, uint64_t seed,
                            uint64_t new_packet_id);

// Boat lookup for a track; throws UnknownBoat.
const BoatPath& find_boat(std::span<const BoatPath> boats, int32_t boat_id);

}  // namespace shiptrack
