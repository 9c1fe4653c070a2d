#include "eacj/event_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eacj {

namespace {

bool parse_double(std::string_view s, double& out) {
  std::string buf(s);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(buf.c_str(), &end);
  return errno == 0 && end == buf.c_str() + buf.size() && !buf.empty();
}

bool parse_int(std::string_view s, long& out) {
  std::string buf(s);
  char* end = nullptr;
  errno = 0;
  out = std::strtol(buf.c_str(), &end, 10);
  return errno == 0 && end == buf.c_str() + buf.size() && !buf.empty();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void fail_line(long line_number, const std::string& what) {
  throw ParseError("event line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

Event parse_event_line(std::string_view line, long line_number,
                       const SensorGeometry& sensor) {
  const auto fields = split_fields(line);
  if (fields.size() != 4) {
    fail_line(line_number, "expected 4 whitespace-separated fields, got " +
                               std::to_string(fields.size()));
  }
  Event e;
  if (!parse_double(fields[0], e.t) || !(e.t >= 0.0)) {
    fail_line(line_number, "bad timestamp '" + std::string(fields[0]) + "'");
  }
  long x = 0, y = 0, p = 0;
  if (!parse_int(fields[1], x)) fail_line(line_number, "bad x '" + std::string(fields[1]) + "'");
  if (!parse_int(fields[2], y)) fail_line(line_number, "bad y '" + std::string(fields[2]) + "'");
  if (!parse_int(fields[3], p)) fail_line(line_number, "bad polarity '" + std::string(fields[3]) + "'");
  if (x < 0 || x >= sensor.width || y < 0 || y >= sensor.height) {
    throw BoundsError("event line " + std::to_string(line_number) + ": position (" +
                      std::to_string(x) + "," + std::to_string(y) +
                      ") outside sensor " + std::to_string(sensor.width) + "x" +
                      std::to_string(sensor.height));
  }
  if (p == 0 || p == -1) {
    e.p = -1;
  } else if (p == 1) {
    e.p = +1;
  } else {
    fail_line(line_number, "polarity must be one of {-1,0,1}, got " + std::to_string(p));
  }
  e.x = static_cast<int>(x);
  e.y = static_cast<int>(y);
  return e;
}

std::string format_event(const Event& e) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.9f %d %d %d", e.t, e.x, e.y, e.p > 0 ? 1 : 0);
  return buf;
}

std::vector<Event> load_event_file(const std::string& path,
                                   const SensorGeometry& sensor) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open event file: " + path);
  std::vector<Event> events;
  std::string line;
  long line_number = 0;
  double last_t = 0.0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || split_fields(line).empty()) continue;
    Event e = parse_event_line(line, line_number, sensor);
    if (!events.empty() && e.t < last_t) {
      throw ParseError("event line " + std::to_string(line_number) +
                       ": timestamp decreases (" + std::to_string(e.t) + " < " +
                       std::to_string(last_t) + ")");
    }
    last_t = e.t;
    events.push_back(e);
  }
  return events;
}

void write_event_file(const std::string& path, const std::vector<Event>& events) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write event file: " + path);
  for (const Event& e : events) out << format_event(e) << '\n';
}

}  // namespace eacj
