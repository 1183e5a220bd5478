#include "shiptrack/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "shiptrack/error.hpp"

namespace shiptrack {

std::vector<ConfigError> validate_config(const SimConfig& cfg) {
  std::vector<ConfigError> errs;
  auto fail = [&](const char* code, const std::string& msg) {
    errs.push_back({code, msg});
  };

  if (cfg.n_frames < 1) fail("NonPositiveFrames", "n_frames must be >= 1");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    fail("NonPositiveDt", "dt must be a positive number of hours");
  if (!(cfg.epsilon_lag >= 0.0))
    fail("NegativeEpsilon", "epsilon_lag must be >= 0");
  if (!(cfg.sigma_x >= 0.0)) fail("NegativeSigmaX", "sigma_x must be >= 0");
  if (!(cfg.sigma_beta >= 0.0))
    fail("NegativeSigmaBeta", "sigma_beta must be >= 0");
  if (cfg.sigma_b && !(*cfg.sigma_b >= 0.0))
    fail("NegativeSigmaB", "sigma_b must be >= 0");
  if (!(cfg.sigma_pd >= 0.0)) fail("NegativeSigmaPd", "sigma_pd must be >= 0");
  if (!(cfg.lambda_T > 0.0) || !std::isfinite(cfg.lambda_T))
    fail("NonPositiveLambdaT", "lambda_T must be a positive mean lifetime");
  if (cfg.lambda_gamma && !(*cfg.lambda_gamma >= 0.0))
    fail("NegativeLambdaGamma", "lambda_gamma must be >= 0");
  if (cfg.iota_low.has_value() != cfg.iota_high.has_value())
    fail("ThresholdPair", "iota_low and iota_high must be set together");
  if (cfg.iota_low && cfg.iota_high && !(*cfg.iota_low < *cfg.iota_high))
    fail("ThresholdOrder", "iota_low must be strictly below iota_high");
  if (!(cfg.window.width() > 0.0) || !(cfg.window.height() > 0.0))
    fail("EmptyWindow", "window must have strictly positive area");
  if (cfg.grid.width < 1 || cfg.grid.height < 1)
    fail("BadGrid", "grid dimensions must be >= 1");
  if (cfg.max_birth_packets < 1)
    fail("NonPositiveBirthCap", "max_birth_packets must be >= 1");
  return errs;
}

void require_valid(const SimConfig& cfg) {
  const auto errs = validate_config(cfg);
  if (errs.empty()) return;
  std::string joined;
  for (const auto& e : errs) {
    if (!joined.empty()) joined += ", ";
    joined += e.code;
  }
  throw SimError("ConfigInvalid", joined);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw SimError("BadValue", "key '" + key + "': cannot parse '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw SimError("BadValue", "key '" + key + "': cannot parse '" + v + "'");
  return out;
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
  uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw SimError("BadValue", "key '" + key + "': cannot parse '" + v + "'");
  return out;
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  SimConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SimError("BadValue", "expected 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw SimError("DuplicateKey", "key '" + key + "' given twice");

    if (key == "n_frames") {
      cfg.n_frames = parse_int(key, val);
    } else if (key == "dt") {
      cfg.dt = parse_num(key, val);
    } else if (key == "epsilon_lag") {
      cfg.epsilon_lag = parse_num(key, val);
    } else if (key == "sigma_x") {
      cfg.sigma_x = parse_num(key, val);
    } else if (key == "sigma_beta") {
      cfg.sigma_beta = parse_num(key, val);
    } else if (key == "sigma_b") {
      cfg.sigma_b = parse_num(key, val);
    } else if (key == "lambda_T") {
      cfg.lambda_T = parse_num(key, val);
    } else if (key == "sigma_pd") {
      cfg.sigma_pd = parse_num(key, val);
    } else if (key == "lambda_gamma") {
      cfg.lambda_gamma = parse_num(key, val);
    } else if (key == "iota_low") {
      cfg.iota_low = parse_num(key, val);
    } else if (key == "iota_high") {
      cfg.iota_high = parse_num(key, val);
    } else if (key == "window") {
      const auto parts = split_ws(val);
      if (parts.size() != 4)
        throw SimError("BadValue", "window needs 'x_min y_min x_max y_max'");
      cfg.window = {parse_num(key, parts[0]), parse_num(key, parts[1]),
                    parse_num(key, parts[2]), parse_num(key, parts[3])};
    } else if (key == "grid") {
      const auto parts = split_ws(val);
      if (parts.size() != 2)
        throw SimError("BadValue", "grid needs 'width height'");
      cfg.grid = {parse_int(key, parts[0]), parse_int(key, parts[1])};
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, val);
    } else if (key == "max_birth_packets") {
      cfg.max_birth_packets = parse_int(key, val);
    } else {
      throw SimError("UnknownKey", "unknown config key '" + key + "'");
    }
  }
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("MissingFile", "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace shiptrack
