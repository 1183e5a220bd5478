#pragma once

#include <cstdint>
#include <optional>

#include "shiptrack/config.hpp"
#include "shiptrack/render.hpp"
#include "shiptrack/rng.hpp"
#include "shiptrack/types.hpp"

namespace shiptrack {

// Detection indicator: 1 iff iota_low < intensity < iota_high (strict).
// With thresholds unset the packet is always detected.
int detection_probability(Vec2 pos, double intensity_at_pos,
                          const SimConfig& cfg);

// Gaussian observation of one detected packet: pos + sigma_x*sqrt(age)*z,
// where age = t_n - birth_time (the marginal covariance grows with age).
// Returns nothing when detected == 0. Throws NegativeAge if t_n < birth.
std::optional<Observation> observe_packet(const Packet& packet, double t_n,
                                          double sigma_x, int detected,
                                          RngStream& rng);

// Union of per-packet observations for a whole state, ordered by source
// packet id. Detection samples `intensity` (the previous frame's raw render
// plus background) at each packet's position; pass nullptr when thresholds
// are inactive or nothing has been rendered yet.
MultiTargetObservation observe_state(const MultiTargetState& state,
                                     const FrameGrid* intensity,
                                     const GridGeom& geom,
                                     const SimConfig& cfg, uint64_t seed,
                                     bool parallel = true);

namespace kernels {
MultiTargetObservation observe_all(const MultiTargetState& state,
                                   const FrameGrid* intensity,
                                   const GridGeom& geom, const SimConfig& cfg,
                                   uint64_t seed);
namespace serial {
MultiTargetObservation observe_all(const MultiTargetState& state,
                                   const FrameGrid* intensity,
                                   const GridGeom& geom, const SimConfig& cfg,
                                   uint64_t seed);
}  // namespace serial
}  // namespace kernels

}  // namespace shiptrack
