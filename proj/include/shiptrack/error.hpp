#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace shiptrack {

// Runtime error carrying a stable machine-readable code ("NonPositiveDt",
// "AllZeroVideo", ...). Tests and the CLI match on code(), not on prose.
class SimError : public std::runtime_error {
 public:
  SimError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace shiptrack
