#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "eacj/event_io.hpp"
#include "eacj/gsae.hpp"

using namespace eacj;

namespace {
const SensorGeometry kSensor{240, 180};
}

TEST_CASE("parse_event_line maps fields in order t x y p") {
  const Event e = parse_event_line("0.001 120 90 1", 1, kSensor);
  CHECK(e.t == doctest::Approx(0.001));
  CHECK(e.x == 120);
  CHECK(e.y == 90);
  CHECK(e.p == +1);
}

TEST_CASE("parse_event_line maps polarity 0 to -1") {
  const Event e = parse_event_line("2.5 0 0 0", 7, kSensor);
  CHECK(e.t == doctest::Approx(2.5));
  CHECK(e.x == 0);
  CHECK(e.y == 0);
  CHECK(e.p == -1);
  CHECK(parse_event_line("2.5 0 0 -1", 8, kSensor).p == -1);
  CHECK(parse_event_line("2.5 0 0 1", 9, kSensor).p == +1);
}

TEST_CASE("parse_event_line rejects malformed input naming the line") {
  CHECK_THROWS_WITH_AS(parse_event_line("abc 1 2 3", 42, kSensor),
                       doctest::Contains("line 42"), ParseError);
  CHECK_THROWS_AS(parse_event_line("0.1 1 2", 1, kSensor), ParseError);
  CHECK_THROWS_AS(parse_event_line("0.1 1 2 3 4", 1, kSensor), ParseError);
  CHECK_THROWS_AS(parse_event_line("0.1 240 0 1", 1, kSensor), BoundsError);
  CHECK_THROWS_AS(parse_event_line("0.1 0 180 1", 1, kSensor), BoundsError);
  CHECK_THROWS_AS(parse_event_line("0.1 -1 0 1", 1, kSensor), BoundsError);
}

TEST_CASE("gsae update writes one cell, latest wins") {
  Gsae gsae(16, 16);
  gsae.update({1.0, 3, 4, +1});
  CHECK(gsae.at(3, 4) == 1.0);
  CHECK(gsae.at(4, 3) == Gsae::kNeverFired);

  gsae.update({2.0, 3, 4, -1});
  CHECK(gsae.at(3, 4) == 2.0);

  gsae.update({3.0, 5, 5, +1});
  CHECK(gsae.at(3, 4) == 2.0);
  CHECK(gsae.at(5, 5) == 3.0);

  CHECK_THROWS_AS(gsae.update({1.0, 16, 0, +1}), BoundsError);
}

TEST_CASE("gsae replay equals per-pixel max of event timestamps") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(0, 7);
  Gsae gsae(8, 8);
  std::vector<double> expected(64, Gsae::kNeverFired);
  double t = 0.0;
  for (int i = 0; i < 500; ++i) {
    t += 0.001;
    const int x = coord(rng);
    const int y = coord(rng);
    gsae.update({t, x, y, +1});
    expected[y * 8 + x] = std::max(expected[y * 8 + x], t);
  }
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) CHECK(gsae.at(x, y) == expected[y * 8 + x]);
}

TEST_CASE("extract_patch copies the window and pads the border") {
  Gsae gsae(240, 180);
  for (int y = 0; y < 180; ++y)
    for (int x = 0; x < 240; ++x) gsae.update({0.001 * (y * 240 + x) + 0.001, x, y, +1});

  SUBCASE("interior window is copied verbatim") {
    const TimestampPatch p = gsae.extract(100, 60, 3);
    CHECK(p.side() == 7);
    for (int dy = -3; dy <= 3; ++dy)
      for (int dx = -3; dx <= 3; ++dx) CHECK(p.at(dx, dy) == gsae.at(100 + dx, 60 + dy));
    CHECK(p.at(0, 0) == gsae.at(100, 60));
  }

  SUBCASE("corner window gets sentinel rows and columns") {
    const TimestampPatch p = gsae.extract(0, 0, 3);
    CHECK(p.side() == 7);
    for (int dy = -3; dy <= 3; ++dy)
      for (int dx = -3; dx <= 3; ++dx) {
        if (dx < 0 || dy < 0) {
          CHECK(p.at(dx, dy) == Gsae::kNeverFired);
        } else {
          CHECK(p.at(dx, dy) == gsae.at(dx, dy));
        }
      }
  }

  SUBCASE("r=15 window at image center is 31x31") {
    const TimestampPatch p = gsae.extract(120, 90, 15);
    CHECK(p.side() == 31);
    CHECK(p.values.size() == 31u * 31u);
  }
}

TEST_CASE("event file round-trip is lossless up to formatting") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "eacj_roundtrip_events.txt";
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> xd(0, 239), yd(0, 179), pd(0, 1);
  std::uniform_real_distribution<double> dt(0.0, 0.01);
  std::vector<Event> events;
  double t = 0.0;
  for (int i = 0; i < 200; ++i) {
    t += dt(rng);
    events.push_back({t, xd(rng), yd(rng), pd(rng) ? +1 : -1});
  }
  write_event_file(path.string(), events);
  const std::vector<Event> back = load_event_file(path.string(), kSensor);
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(back[i].t == doctest::Approx(events[i].t).epsilon(1e-9));
    CHECK(back[i].x == events[i].x);
    CHECK(back[i].y == events[i].y);
    CHECK(back[i].p == events[i].p);
  }
  fs::remove(path);
}

TEST_CASE("load_event_file rejects decreasing timestamps") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "eacj_bad_order.txt";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("0.5 1 1 1\n0.4 1 1 1\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_event_file(path.string(), kSensor), ParseError);
  fs::remove(path);
}
