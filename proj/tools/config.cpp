#include "config.hpp"

#include <fstream>
#include <sstream>

namespace reclab::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ConfigNode& descend(ConfigNode& root, const std::string& path) {
  ConfigNode* at = &root;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    part = trim(part);
    if (part.empty()) throw ConfigError("empty section path component in [" + path + "]");
    at = &at->children[part];
  }
  return *at;
}

}  // namespace

const std::string& ConfigNode::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string ConfigNode::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

const ConfigNode& ConfigNode::child(const std::string& name) const {
  auto it = children.find(name);
  if (it == children.end()) throw ConfigError("missing config section: [" + name + "]");
  return it->second;
}

ConfigNode parse_config_text(const std::string& text) {
  ConfigNode root;
  ConfigNode* current = &root;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      current = &descend(root, line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (current->values.contains(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
    current->values[key] = value;
  }
  return root;
}

ConfigNode parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw ConfigError("trailing characters in integer: " + s);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("malformed integer: " + s);
  }
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("malformed boolean: " + s);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("expected lo:hi range: " + s);
  std::int64_t lo = parse_int(trim(s.substr(0, colon)));
  std::int64_t hi = parse_int(trim(s.substr(colon + 1)));
  if (lo > hi) throw ConfigError("range with lo > hi: " + s);
  return {lo, hi};
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(parse_int(tok));
  }
  return out;
}

}  // namespace reclab::cli
