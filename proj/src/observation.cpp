#include "shiptrack/observation.hpp"

#include <cmath>

#include "shiptrack/error.hpp"

namespace shiptrack {

int detection_probability(Vec2, double intensity_at_pos, const SimConfig& cfg) {
  if (!cfg.thresholds_active()) return 1;
  return (*cfg.iota_low < intensity_at_pos &&
          intensity_at_pos < *cfg.iota_high)
             ? 1
             : 0;
}

std::optional<Observation> observe_packet(const Packet& packet, double t_n,
                                          double sigma_x, int detected,
                                          RngStream& rng) {
  if (t_n < packet.birth_time)
    throw SimError("NegativeAge", "observation time precedes packet birth");
  if (!detected) return std::nullopt;
  const double s = sigma_x * std::sqrt(t_n - packet.birth_time);
  const Vec2 z = rng.normal2();
  Observation o;
  o.pos = {packet.pos.x + s * z.x, packet.pos.y + s * z.y};
  o.source_packet_id = packet.id;
  o.source_track_id = packet.track_id;
  o.frame_time = t_n;
  return o;
}

namespace kernels {

namespace {
inline std::optional<Observation> observe_one(const Packet& p,
                                              const MultiTargetState& state,
                                              const FrameGrid* intensity,
                                              const GridGeom& geom,
                                              const SimConfig& cfg,
                                              uint64_t seed) {
  int detected = 1;
  if (cfg.thresholds_active()) {
    const double level =
        intensity ? sample_grid(*intensity, geom, p.pos) : 0.0;
    detected = detection_probability(p.pos, level, cfg);
  }
  RngStream rng(seed, uint32_t(state.frame), Mechanism::Observe, p.id);
  return observe_packet(p, state.frame_time, cfg.sigma_x, detected, rng);
}

MultiTargetObservation compact(std::vector<std::optional<Observation>>& slots) {
  MultiTargetObservation out;
  out.reserve(slots.size());
  for (auto& s : slots)
    if (s) out.push_back(*s);
  return out;
}
}  // namespace

MultiTargetObservation observe_all(const MultiTargetState& state,
                                   const FrameGrid* intensity,
                                   const GridGeom& geom, const SimConfig& cfg,
                                   uint64_t seed) {
  std::vector<std::optional<Observation>> slots(state.packets.size());
  const int64_t n = int64_t(state.packets.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i)
    slots[size_t(i)] =
        observe_one(state.packets[size_t(i)], state, intensity, geom, cfg, seed);
  return compact(slots);
}

namespace serial {
MultiTargetObservation observe_all(const MultiTargetState& state,
                                   const FrameGrid* intensity,
                                   const GridGeom& geom, const SimConfig& cfg,
                                   uint64_t seed) {
  std::vector<std::optional<Observation>> slots(state.packets.size());
  for (size_t i = 0; i < state.packets.size(); ++i)
    slots[i] = observe_one(state.packets[i], state, intensity, geom, cfg, seed);
  return compact(slots);
}
}  // namespace serial

}  // namespace kernels

MultiTargetObservation observe_state(const MultiTargetState& state,
                                     const FrameGrid* intensity,
                                     const GridGeom& geom,
                                     const SimConfig& cfg, uint64_t seed,
                                     bool parallel) {
  return parallel
             ? kernels::observe_all(state, intensity, geom, cfg, seed)
             : kernels::serial::observe_all(state, intensity, geom, cfg, seed);
}

}  // namespace shiptrack
