#pragma once

#include <map>
#include <string>
#include <vector>

#include "eacj/types.hpp"

namespace eacj {

/// Flat "section.key = value" text configuration. '#' starts a comment;
/// values may be scalars or space-separated lists.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& dflt) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& dflt) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
};

}  // namespace eacj
