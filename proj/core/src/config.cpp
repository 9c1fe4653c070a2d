#include "eacj/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eacj {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(value.c_str(), &end);
  if (errno != 0 || end != value.c_str() + value.size() || value.empty()) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_number) + ": empty key");
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string Config::get_string(const std::string& key, const std::string& dflt) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? dflt : to_double(key, it->second);
}

int Config::get_int(const std::string& key, int dflt) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  const double v = to_double(key, it->second);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      it->second + "'");
  }
  return i;
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        const std::vector<double>& dflt) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  std::vector<double> values;
  std::istringstream ss(it->second);
  std::string token;
  while (ss >> token) values.push_back(to_double(key, token));
  return values;
}

std::vector<int> Config::get_ints(const std::string& key,
                                  const std::vector<int>& dflt) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  std::vector<int> values;
  for (double v : get_doubles(key, {})) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw ConfigError("config key '" + key + "': expected integers");
    }
    values.push_back(i);
  }
  return values;
}

}  // namespace eacj
