#include "sigma/kv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sigma {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& stage, int line, const std::string& what) {
  throw Error(stage, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<KvEntry> parse_kv(std::string_view text, const std::string& stage) {
  std::vector<KvEntry> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(stage, line_no, "expected `key = value`");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) fail(stage, line_no, "empty key");
    out.push_back({std::string(key), std::string(value), line_no});
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string format_vec(const Vec& v, int dim) {
  std::string s;
  for (int j = 0; j < dim; ++j) {
    if (j) s += ' ';
    s += format_double(v[j]);
  }
  return s;
}

std::vector<double> parse_doubles(const KvEntry& e, const std::string& stage) {
  std::vector<double> out;
  std::istringstream in(e.value);
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail(stage, e.line, "`" + e.key + "`: not a number: " + tok);
    out.push_back(v);
  }
  if (out.empty()) fail(stage, e.line, "`" + e.key + "`: missing value");
  return out;
}

double parse_double(const KvEntry& e, const std::string& stage) {
  const auto v = parse_doubles(e, stage);
  if (v.size() != 1) fail(stage, e.line, "`" + e.key + "`: expected one number");
  return v[0];
}

long long parse_int(const KvEntry& e, const std::string& stage) {
  long long v = 0;
  const auto* first = e.value.data();
  const auto* last = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) fail(stage, e.line, "`" + e.key + "`: expected an integer");
  return v;
}

std::string read_text_file(const std::string& path, const std::string& stage) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(stage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text, const std::string& stage) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(stage, "cannot write " + path);
  out << text;
}

}  // namespace sigma
