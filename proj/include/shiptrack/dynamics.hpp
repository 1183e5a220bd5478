#pragma once

#include <cstdint>
#include <span>

#include "shiptrack/rng.hpp"
#include "shiptrack/types.hpp"
#include "shiptrack/wind.hpp"

namespace shiptrack {

// Exact one-step Gaussian transition of the frozen-wind SDE:
// x' = x + mu(x, t_from) * (t_to - t_from) + sigma_x * sqrt(t_to - t_from) * z.
// The piecewise-constant-wind assumption makes this the model itself, not a
// numerical approximation.
Vec2 transition(Vec2 pos, double t_from, double t_to, const WindField& wind,
                double sigma_x, RngStream& rng);

// Exponential track lifetime with MEAN lambda_T hours.
double sample_track_lifetime(double lambda_T, RngStream& rng);

struct LogNormalParams {
  double mu;
  double sigma2;
};

// Moment-matched log-normal packet lifetime: mean T_d, variance sigma_pd^2.
LogNormalParams lognormal_death_params(double T_d, double sigma_pd);

// birth_time + LogNormal(mu_d, sigma_d^2) draw; strictly after birth_time.
double sample_packet_death(double birth_time, double T_d, double sigma_pd,
                           RngStream& rng);

// Strict inequality: a packet whose death_time equals t_n is gone at frame n.
inline bool survives(const Packet& p, double t_n) { return p.death_time > t_n; }

namespace kernels {

// Moves every packet one frame interval in place. One RNG stream per packet,
// keyed by (seed, frame, Motion, packet id), so results are independent of
// iteration order and thread count.
void advance_packets(std::span<Packet> packets, double t_from, double t_to,
                     const WindField& wind, double sigma_x, uint64_t seed,
                     uint32_t frame);

namespace serial {
// Reference implementation; must match the parallel kernel bit for bit.
void advance_packets(std::span<Packet> packets, double t_from, double t_to,
                     const WindField& wind, double sigma_x, uint64_t seed,
                     uint32_t frame);
}  // namespace serial

}  // namespace kernels

}  // namespace shiptrack
