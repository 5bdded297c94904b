// Minimal TOML-style config: [section] headers, key = value lines, # comments.
// Values are kept as raw tokens and converted on access.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace blowlab {

class Config {
 public:
  Config() = default;
  static Config parse_string(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& dotted_key) const;
  double num(const std::string& dotted_key, double fallback) const;
  long long integer(const std::string& dotted_key, long long fallback) const;
  bool flag(const std::string& dotted_key, bool fallback) const;
  std::string str(const std::string& dotted_key, const std::string& fallback) const;

  std::vector<std::string> keys() const;

  // FNV-1a over the sorted canonical "key=value" lines; stamps reports so a
  // result can be traced back to the exact configuration.
  std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> raw_;
};

}  // namespace blowlab
