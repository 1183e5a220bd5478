#include "shiptrack/genesis.hpp"

#include <cmath>

#include "shiptrack/dynamics.hpp"
#include "shiptrack/error.hpp"
#include "shiptrack/rng.hpp"

namespace shiptrack {

std::vector<BoatSchedule> make_boat_schedules(std::span<const BoatPath> boats,
                                              const SimConfig& cfg) {
  std::vector<BoatSchedule> out;
  out.reserve(boats.size());
  for (const BoatPath& b : boats) {
    BoatSchedule s;
    s.boat_id = b.boat_id;
    s.entry = entry_time(b, cfg.window, cfg.horizon(), cfg.dt / 10.0);
    if (s.entry) {
      // First frame time t_n with entry + epsilon <= t_n; the small slack
      // absorbs float noise in t/dt so the due frame is an exact integer.
      const double due = (*s.entry + cfg.epsilon_lag) / cfg.dt;
      const int32_t frame = int32_t(std::ceil(due - 1e-9));
      if (frame < cfg.n_frames) s.birth_frame = frame;
    }
    out.push_back(s);
  }
  return out;
}

const BoatPath& find_boat(std::span<const BoatPath> boats, int32_t boat_id) {
  for (const BoatPath& b : boats)
    if (b.boat_id == boat_id) return b;
  throw SimError("UnknownBoat", "no boat with id " + std::to_string(boat_id));
}

GenesisOutput spontaneous_births(int32_t frame, const SimConfig& cfg,
                                 std::span<const BoatPath> boats,
                                 std::span<const BoatSchedule> schedules,
                                 uint64_t seed, uint32_t next_track_id,
                                 uint64_t next_packet_id) {
  GenesisOutput out;
  const double t_n = cfg.frame_time(frame);
  for (const BoatSchedule& sched : schedules) {
    if (sched.birth_frame != frame) continue;
    const BoatPath& boat = find_boat(boats, sched.boat_id);

    RngStream birth_rng(seed, uint32_t(frame), Mechanism::Birth, uint64_t(sched.boat_id));
    uint64_t n_b = 1;
    if (cfg.lambda_gamma) n_b = birth_rng.poisson(*cfg.lambda_gamma);
    if (n_b > uint64_t(cfg.max_birth_packets)) {
      n_b = uint64_t(cfg.max_birth_packets);
      out.birth_cap_hit = true;
    }
    if (n_b == 0) continue;  // Poisson fired empty: no track appears

    RngStream life_rng(seed, uint32_t(frame), Mechanism::TrackLifetime,
                       uint64_t(sched.boat_id));
    Track track;
    track.track_id = next_track_id++;
    track.boat_id = sched.boat_id;
    track.lifetime = sample_track_lifetime(cfg.lambda_T, life_rng);
    track.origin_time = t_n;
    track.origin_frame = frame;
    out.new_tracks.push_back(track);

    // Boat position at the lagged emission time t_n - epsilon.
    const Vec2 origin = boat_position(boat, t_n - cfg.epsilon_lag);
    const double spread = cfg.sigma_b_value();
    for (uint64_t i = 0; i < n_b; ++i) {
      Packet p;
      p.id = next_packet_id++;
      p.track_id = track.track_id;
      const Vec2 z = birth_rng.normal2();
      p.pos = {origin.x + spread * z.x, origin.y + spread * z.y};
      p.birth_time = t_n;
      p.birth_frame = frame;
      p.death_time =
          sample_packet_death(t_n, track.lifetime, cfg.sigma_pd, birth_rng);
      p.is_head = true;
      out.new_packets.push_back(p);
    }
  }
  return out;
}

std::optional<Packet> spawn(const Packet& head, const BoatPath& boat,
                            const Track& track, int32_t frame,
                            const SimConfig& cfg, uint64_t seed,
                            uint64_t new_packet_id) {
  if (!head.is_head) return std::nullopt;
  const double t_n = cfg.frame_time(frame);
  // p_beta = 1 while the boat keeps emitting (t_n <= T), else 0.
  if (t_n > cfg.horizon() + 1e-12) return std::nullopt;

  RngStream rng(seed, uint32_t(frame), Mechanism::Spawn, head.id);
  const Vec2 origin = boat_position(boat, t_n - cfg.epsilon_lag);
  const double spread = std::sqrt(cfg.epsilon_lag) * cfg.sigma_beta;
  const Vec2 z = rng.normal2();

  Packet p;
  p.id = new_packet_id;
  p.track_id = track.track_id;
  p.pos = {origin.x + spread * z.x, origin.y + spread * z.y};
  p.birth_time = t_n;
  p.birth_frame = frame;
  p.death_time = sample_packet_death(t_n, track.lifetime, cfg.sigma_pd, rng);
  p.is_head = true;
  return p;
}

}  // namespace shiptrack
