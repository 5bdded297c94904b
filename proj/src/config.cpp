#include "blowlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blowlab/numerics.hpp"

namespace blowlab {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strips a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::runtime_error("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key or value");
    if (!section.empty()) key = section + "." + key;
    if (cfg.raw_.count(key))
      throw std::runtime_error("config line " + std::to_string(lineno) + ": duplicate key " + key);
    cfg.raw_[key] = val;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool Config::has(const std::string& k) const { return raw_.count(k) != 0; }

double Config::num(const std::string& k, double fallback) const {
  auto it = raw_.find(k);
  if (it == raw_.end()) return fallback;
  const char* s = it->second.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw std::runtime_error("config: key " + k + " is not a number: " + it->second);
  return v;
}

long long Config::integer(const std::string& k, long long fallback) const {
  auto it = raw_.find(k);
  if (it == raw_.end()) return fallback;
  const char* s = it->second.c_str();
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0')
    throw std::runtime_error("config: key " + k + " is not an integer: " + it->second);
  return v;
}

bool Config::flag(const std::string& k, bool fallback) const {
  auto it = raw_.find(k);
  if (it == raw_.end()) return fallback;
  if (it->second == "true") return true;
  if (it->second == "false") return false;
  throw std::runtime_error("config: key " + k + " is not true/false: " + it->second);
}

std::string Config::str(const std::string& k, const std::string& fallback) const {
  auto it = raw_.find(k);
  if (it == raw_.end()) return fallback;
  const std::string& v = it->second;
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  out.reserve(raw_.size());
  for (const auto& kv : raw_) out.push_back(kv.first);
  return out;
}

std::uint64_t Config::hash() const {
  std::string canon;
  for (const auto& kv : raw_) {  // std::map iterates sorted
    canon += kv.first;
    canon += '=';
    canon += kv.second;
    canon += '\n';
  }
  return fnv1a(canon);
}

}  // namespace blowlab
