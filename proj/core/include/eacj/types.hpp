#pragma once

#include <stdexcept>
#include <string>

namespace eacj {

/// One asynchronous camera event: pixel position, timestamp in seconds,
/// polarity of the brightness change (+1 / -1).
struct Event {
  double t = 0.0;
  int x = 0;
  int y = 0;
  int p = +1;
};

struct SensorGeometry {
  int width = 240;
  int height = 180;

  bool contains(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  long long area() const { return static_cast<long long>(width) * height; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eacj
