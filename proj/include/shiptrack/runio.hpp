#pragma once

#include <string>

#include "shiptrack/engine.hpp"

namespace shiptrack {

// Shortest round-trip decimal form (std::to_chars); used everywhere a double
// is written so replays are byte-identical.
std::string fmt_double(double v);

// One JSON-lines record, e.g.
// {"t":5,"frame":25,"event":"birth","packet":0,"track":0,"pos":[...],...}
std::string event_to_jsonl(const Event& e);

struct WriteOptions {
  bool write_frames = true;
};

// Writes events.jsonl, points.csv, run_meta.json and (optionally) one
// frame_%04d.pgm per frame into dir, creating it if needed.
void write_run_dir(const RunResult& result, const Scenario& sc,
                   const std::string& dir, const WriteOptions& opts = {});

}  // namespace shiptrack
