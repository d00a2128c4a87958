#include "pqlab/io.hpp"

#include "pqlab/grid.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace pqlab {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    const bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows, std::uint64_t cfg_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    const auto emit_line = [&out](const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << csv_field(fields[i]);
        }
        out << '\n';
    };
    emit_line(header);
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw DomainError("write_csv: row width " + std::to_string(row.size()) +
                              " does not match header width " + std::to_string(header.size()));
        emit_line(row);
    }
    char tail[48];
    std::snprintf(tail, sizeof(tail), "# config_hash=%016llx\n",
                  static_cast<unsigned long long>(cfg_hash));
    out << tail;
    if (!out) throw IoError("write failed: " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace pqlab
