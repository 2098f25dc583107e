#include "ccgeom/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccgeom {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  explicit Cursor(const std::string& str) : s(str) {}
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  char get() { return s[i++]; }

  void skip_ws_inline() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  void skip_ws_and_comments() {
    for (;;) {
      skip_ws_inline();
      if (done()) return;
      if (s[i] == '#') {
        while (!done() && s[i] != '\n') ++i;
        continue;
      }
      if (s[i] == '\n' || s[i] == '\r') {
        ++i;
        continue;
      }
      return;
    }
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1;
    for (std::size_t k = 0; k < i && k < s.size(); ++k)
      if (s[k] == '\n') ++line;
    throw std::runtime_error("toml parse error at line " + std::to_string(line) + ": " + msg);
  }
};

std::string parse_basic_string(Cursor& c) {
  if (c.get() != '"') c.fail("expected string");
  std::string out;
  while (!c.done()) {
    char ch = c.get();
    if (ch == '"') return out;
    if (ch == '\\') {
      if (c.done()) c.fail("dangling escape");
      char e = c.get();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: c.fail("unsupported escape");
      }
    } else {
      out += ch;
    }
  }
  c.fail("unterminated string");
}

std::string parse_key_part(Cursor& c) {
  c.skip_ws_inline();
  if (!c.done() && c.peek() == '"') return parse_basic_string(c);
  std::string out;
  while (!c.done()) {
    char ch = c.peek();
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-') {
      out += ch;
      ++c.i;
    } else {
      break;
    }
  }
  if (out.empty()) c.fail("expected key");
  return out;
}

nlohmann::json parse_value(Cursor& c);

nlohmann::json parse_array(Cursor& c) {
  if (c.get() != '[') c.fail("expected array");
  nlohmann::json arr = nlohmann::json::array();
  for (;;) {
    c.skip_ws_and_comments();
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ']') {
      c.get();
      return arr;
    }
    arr.push_back(parse_value(c));
    c.skip_ws_and_comments();
    if (!c.done() && c.peek() == ',') {
      c.get();
      continue;
    }
    c.skip_ws_and_comments();
    if (!c.done() && c.peek() == ']') {
      c.get();
      return arr;
    }
    c.fail("expected ',' or ']' in array");
  }
}

nlohmann::json parse_inline_table(Cursor& c) {
  if (c.get() != '{') c.fail("expected inline table");
  nlohmann::json obj = nlohmann::json::object();
  c.skip_ws_inline();
  if (!c.done() && c.peek() == '}') {
    c.get();
    return obj;
  }
  for (;;) {
    std::string key = parse_key_part(c);
    c.skip_ws_inline();
    if (c.done() || c.get() != '=') c.fail("expected '=' in inline table");
    c.skip_ws_inline();
    obj[key] = parse_value(c);
    c.skip_ws_inline();
    if (!c.done() && c.peek() == ',') {
      c.get();
      c.skip_ws_inline();
      continue;
    }
    if (!c.done() && c.peek() == '}') {
      c.get();
      return obj;
    }
    c.fail("expected ',' or '}' in inline table");
  }
}

nlohmann::json parse_value(Cursor& c) {
  c.skip_ws_inline();
  if (c.done()) c.fail("expected value");
  char ch = c.peek();
  if (ch == '"') return parse_basic_string(c);
  if (ch == '[') return parse_array(c);
  if (ch == '{') return parse_inline_table(c);
  if (c.s.compare(c.i, 4, "true") == 0) {
    c.i += 4;
    return true;
  }
  if (c.s.compare(c.i, 5, "false") == 0) {
    c.i += 5;
    return false;
  }
  // number
  std::size_t start = c.i;
  bool is_float = false;
  while (!c.done()) {
    char d = c.peek();
    if (std::isdigit(static_cast<unsigned char>(d)) || d == '+' || d == '-' || d == '_') {
      ++c.i;
    } else if (d == '.' || d == 'e' || d == 'E') {
      is_float = true;
      ++c.i;
    } else {
      break;
    }
  }
  if (c.i == start) c.fail("expected value");
  std::string num = c.s.substr(start, c.i - start);
  num.erase(std::remove(num.begin(), num.end(), '_'), num.end());
  try {
    if (is_float) return std::stod(num);
    return static_cast<std::int64_t>(std::stoll(num));
  } catch (const std::exception&) {
    c.fail("bad number '" + num + "'");
  }
}

nlohmann::json* navigate(nlohmann::json& root, const std::vector<std::string>& path) {
  nlohmann::json* cur = &root;
  for (const auto& p : path) {
    if (!cur->contains(p)) (*cur)[p] = nlohmann::json::object();
    cur = &(*cur)[p];
  }
  return cur;
}

} // namespace

nlohmann::json parse_toml(const std::string& text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  Cursor c(text);
  for (;;) {
    c.skip_ws_and_comments();
    if (c.done()) break;
    if (c.peek() == '[') {
      c.get();
      if (!c.done() && c.peek() == '[') c.fail("arrays of tables are not supported");
      std::vector<std::string> path;
      path.push_back(parse_key_part(c));
      c.skip_ws_inline();
      while (!c.done() && c.peek() == '.') {
        c.get();
        path.push_back(parse_key_part(c));
        c.skip_ws_inline();
      }
      if (c.done() || c.get() != ']') c.fail("expected ']'");
      table = navigate(root, path);
      continue;
    }
    std::vector<std::string> path;
    path.push_back(parse_key_part(c));
    c.skip_ws_inline();
    while (!c.done() && c.peek() == '.') {
      c.get();
      path.push_back(parse_key_part(c));
      c.skip_ws_inline();
    }
    if (c.done() || c.get() != '=') c.fail("expected '='");
    c.skip_ws_inline();
    nlohmann::json val = parse_value(c);
    nlohmann::json* dst = table;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (!dst->contains(path[k])) (*dst)[path[k]] = nlohmann::json::object();
      dst = &(*dst)[path[k]];
    }
    (*dst)[path.back()] = std::move(val);
  }
  return root;
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    return nlohmann::json::parse(text);
  return parse_toml(text);
}

} // namespace ccgeom
