#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eacj/types.hpp"

namespace eacj {

// Text event stream, one event per line: "t x y p", t in seconds.
// p accepts {0,1} (mapped to {-1,+1}) as well as {-1,+1} verbatim.

Event parse_event_line(std::string_view line, long line_number,
                       const SensorGeometry& sensor);

std::string format_event(const Event& e);

/// Loads a whole event file. Enforces non-decreasing timestamps and
/// in-sensor coordinates; errors name the offending line.
std::vector<Event> load_event_file(const std::string& path,
                                   const SensorGeometry& sensor);

void write_event_file(const std::string& path, const std::vector<Event>& events);

}  // namespace eacj
