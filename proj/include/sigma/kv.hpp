#pragma once

// Flat `key = value` text used by shape files, experiment configs, field
// headers and verdict files. `#` starts a comment; blank lines are skipped.

#include <string>
#include <string_view>
#include <vector>

#include "sigma/vec.hpp"

namespace sigma {

struct KvEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Throws sigma::Error("<stage>", "line N: ...") on malformed lines.
std::vector<KvEntry> parse_kv(std::string_view text, const std::string& stage);

/// Shortest representation that reads back to the same double.
std::string format_double(double v);
std::string format_vec(const Vec& v, int dim);

double parse_double(const KvEntry& e, const std::string& stage);
long long parse_int(const KvEntry& e, const std::string& stage);
std::vector<double> parse_doubles(const KvEntry& e, const std::string& stage);

std::string read_text_file(const std::string& path, const std::string& stage);
void write_text_file(const std::string& path, const std::string& text, const std::string& stage);

}  // namespace sigma
