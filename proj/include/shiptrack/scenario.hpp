#pragma once

#include <cstdint>
#include <string>

#include "shiptrack/engine.hpp"

namespace shiptrack {

// The four-boat circular-wind scenario: 100 frames at 0.2 h, 5 h emission
// lag, window [0,20]^2 at 512x512, four preset boats, counterclockwise
// circular wind. One packet per boat entry, thresholds open.
Scenario paper_fig3_scenario(uint64_t seed);

// Preset lookup by CLI name; currently only "paper-fig3".
Scenario preset_scenario(const std::string& name, uint64_t seed);

}  // namespace shiptrack
