#pragma once

#include <cmath>
#include <cstdint>

#include "shiptrack/vec2.hpp"

namespace shiptrack {

// Philox4x32-10 keyed counter block cipher (Salmon et al., SC'11).
// Counter-based: the value of any (frame, mechanism, entity, draw) tuple is
// independent of every other draw, so per-packet streams can be generated in
// any order and from any thread with identical results.
namespace philox {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

struct Block {
  uint32_t w[4];
};

inline Block encrypt(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3,
                     uint32_t k0, uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    const uint64_t p0 = uint64_t(kMul0) * c0;
    const uint64_t p1 = uint64_t(kMul1) * c2;
    const uint32_t n0 = uint32_t(p1 >> 32) ^ c1 ^ k0;
    const uint32_t n1 = uint32_t(p1);
    const uint32_t n2 = uint32_t(p0 >> 32) ^ c3 ^ k1;
    const uint32_t n3 = uint32_t(p0);
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return Block{{c0, c1, c2, c3}};
}

}  // namespace philox

// Which part of the per-frame update a stream feeds. Part of the stream key
// and recorded in the event log.
enum class Mechanism : uint32_t {
  Motion = 1,
  Spawn = 2,
  Birth = 3,
  TrackLifetime = 4,
  Observe = 5,
};

// One logical random stream, keyed by (master seed, frame, mechanism, entity).
// Successive draws advance the last counter word only.
class RngStream {
 public:
  RngStream(uint64_t seed, uint32_t frame, Mechanism tag, uint64_t entity)
      : k0_(uint32_t(seed)),
        k1_(uint32_t(seed >> 32) ^ uint32_t(entity >> 32)),
        c0_(frame),
        c1_(uint32_t(tag)),
        c2_(uint32_t(entity)) {}

  uint32_t next_u32() {
    if (pos_ == 4) {
      block_ = philox::encrypt(c0_, c1_, c2_, draw_++, k0_, k1_);
      pos_ = 0;
    }
    return block_.w[pos_++];
  }

  uint64_t next_u64() {
    const uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // 53-bit uniform in [0, 1).
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe under log().
  double uniform01_open() {
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard bivariate normal via Box-Muller; one pair per call.
  Vec2 normal2() {
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  double normal() { return normal2().x; }

  // Exponential with the given MEAN, by inverse CDF.
  double exponential(double mean) { return exp_quantile(mean, uniform01()); }

  static double exp_quantile(double mean, double u) {
    return -mean * std::log1p(-u);
  }

  // Knuth's product method, chunked so exp(-lambda) never underflows.
  uint64_t poisson(double lambda) {
    uint64_t total = 0;
    while (lambda > 0.0) {
      const double chunk = lambda < 500.0 ? lambda : 500.0;
      const double limit = std::exp(-chunk);
      double p = 1.0;
      uint64_t k = 0;
      do {
        ++k;
        p *= uniform01_open();
      } while (p > limit);
      total += k - 1;
      lambda -= chunk;
    }
    return total;
  }

 private:
  uint32_t k0_, k1_;
  uint32_t c0_, c1_, c2_;
  uint32_t draw_ = 0;
  philox::Block block_{};
  int pos_ = 4;
};

}  // namespace shiptrack
