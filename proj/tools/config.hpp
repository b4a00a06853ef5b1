#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace reclab::cli {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Nested key/value sections. Section headers use dotted paths:
//   experiment = rp-witness
//   [system]
//   kind = rotation
//   [set.inner]
//   kind = ap
// Values are bare strings; '#' starts a comment. No floating literals are
// ever accepted downstream: rationals are "p/q", irrationals are cf tags.
struct ConfigNode {
  std::map<std::string, std::string> values;
  std::map<std::string, ConfigNode> children;

  bool has(const std::string& key) const { return values.contains(key); }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  const ConfigNode& child(const std::string& name) const;
  bool has_child(const std::string& name) const { return children.contains(name); }
};

ConfigNode parse_config_text(const std::string& text);
ConfigNode parse_config_file(const std::string& path);

// Value parsers shared by the experiment builders.
std::int64_t parse_int(const std::string& s);
bool parse_bool(const std::string& s);
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s);  // "lo:hi"
std::vector<std::int64_t> parse_int_list(const std::string& s);           // "1,2,4"

}  // namespace reclab::cli
