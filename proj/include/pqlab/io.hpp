#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pqlab {

/// Thrown for filesystem failures; the message names the offending path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form of x (std::to_chars).  Deterministic, so
/// repeated runs emit byte-identical files.
std::string format_double(double x);

/// RFC-4180 field escaping: fields containing commas, quotes, or newlines are
/// quoted, with embedded quotes doubled; everything else passes through.
std::string csv_field(const std::string& s);

/// Writes header + rows as CSV, then a trailing comment line
/// "# config_hash=<16 hex digits>".  Rows must match the header width.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows, std::uint64_t cfg_hash);

/// Writes UTF-8 JSON with sorted keys and a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);

/// 64-bit FNV-1a over a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace pqlab
