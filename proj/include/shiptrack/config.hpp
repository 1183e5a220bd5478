#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiptrack/vec2.hpp"

namespace shiptrack {

struct Rect {
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(Vec2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

struct GridDims {
  int width = 0;
  int height = 0;
};

// All scalar inputs of a run. Field names are exactly the config file keys.
struct SimConfig {
  int n_frames = 100;        // N, count of frames
  double dt = 0.2;           // Delta, hours between frames
  double epsilon_lag = 5.0;  // epsilon, ship-to-cloud visibility lag, hours
  double sigma_x = 0.01;     // motion diffusivity, units/sqrt(hour)
  double sigma_beta = 0.01;  // spawn placement spread, units
  std::optional<double> sigma_b;  // spontaneous-birth spread; defaults to sigma_beta
  double lambda_T = 80.0;    // MEAN track lifetime, hours
  double sigma_pd = 0.2;     // packet death-time std, hours
  // Births per boat entry ~ Poisson(lambda_gamma); absent means exactly one.
  std::optional<double> lambda_gamma;
  // Detection thresholds on raw pixel intensity; absent means always detect.
  std::optional<double> iota_low;
  std::optional<double> iota_high;
  Rect window{0.0, 0.0, 20.0, 20.0};
  GridDims grid{512, 512};
  uint64_t seed = 0;
  int max_birth_packets = 10000;  // cap on packets per spontaneous-birth event

  double horizon() const { return n_frames * dt; }
  // Times are always frame_index * dt, never accumulated sums.
  double frame_time(int n) const { return n * dt; }
  double sigma_b_value() const { return sigma_b ? *sigma_b : sigma_beta; }
  bool thresholds_active() const {
    return iota_low.has_value() && iota_high.has_value();
  }
};

struct ConfigError {
  std::string code;
  std::string message;
};

// Checks every SimConfig invariant and reports all violations together.
// Empty result means valid.
std::vector<ConfigError> validate_config(const SimConfig& cfg);

// Throws SimError("ConfigInvalid") listing every violated code.
void require_valid(const SimConfig& cfg);

// Flat key/value config file ("key = value", '#' comments). Unknown keys are
// an error. Throws SimError with codes UnknownKey/BadValue/DuplicateKey/
// MissingFile.
SimConfig load_config_file(const std::string& path);
SimConfig parse_config_text(const std::string& text);

}  // namespace shiptrack
