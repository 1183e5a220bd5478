#include "shiptrack/dynamics.hpp"

#include <cmath>

#include "shiptrack/error.hpp"

namespace shiptrack {

Vec2 transition(Vec2 pos, double t_from, double t_to, const WindField& wind,
                double sigma_x, RngStream& rng) {
  if (t_to < t_from)
    throw SimError("NegativeDuration", "transition requires t_to >= t_from");
  const double dt = t_to - t_from;
  const Vec2 mu = eval_wind(wind, pos, t_from);
  const Vec2 z = rng.normal2();
  const double s = sigma_x * std::sqrt(dt);
  return {pos.x + mu.x * dt + s * z.x, pos.y + mu.y * dt + s * z.y};
}

double sample_track_lifetime(double lambda_T, RngStream& rng) {
  if (!(lambda_T > 0.0))
    throw SimError("NonPositiveMean", "lambda_T must be > 0");
  return rng.exponential(lambda_T);
}

LogNormalParams lognormal_death_params(double T_d, double sigma_pd) {
  if (!(T_d > 0.0))
    throw SimError("NonPositiveLifetime", "T_d must be > 0");
  // log1p keeps mu + sigma2/2 == log(T_d) exact in floating point, which the
  // mean identity test relies on.
  const double r = (sigma_pd / T_d) * (sigma_pd / T_d);
  const double sigma2 = std::log1p(r);
  const double mu = std::log(T_d) - 0.5 * sigma2;
  return {mu, sigma2};
}

double sample_packet_death(double birth_time, double T_d, double sigma_pd,
                           RngStream& rng) {
  const LogNormalParams p = lognormal_death_params(T_d, sigma_pd);
  const double z = rng.normal();
  return birth_time + std::exp(p.mu + std::sqrt(p.sigma2) * z);
}

namespace kernels {

namespace {
inline void advance_one(Packet& p, double t_from, double t_to,
                        const WindField& wind, double sigma_x, uint64_t seed,
                        uint32_t frame) {
  RngStream rng(seed, frame, Mechanism::Motion, p.id);
  p.pos = transition(p.pos, t_from, t_to, wind, sigma_x, rng);
}
}  // namespace

void advance_packets(std::span<Packet> packets, double t_from, double t_to,
                     const WindField& wind, double sigma_x, uint64_t seed,
                     uint32_t frame) {
  const int64_t n = int64_t(packets.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i)
    advance_one(packets[i], t_from, t_to, wind, sigma_x, seed, frame);
}

namespace serial {
void advance_packets(std::span<Packet> packets, double t_from, double t_to,
                     const WindField& wind, double sigma_x, uint64_t seed,
                     uint32_t frame) {
  for (Packet& p : packets)
    advance_one(p, t_from, t_to, wind, sigma_x, seed, frame);
}
}  // namespace serial

}  // namespace kernels

}  // namespace shiptrack
