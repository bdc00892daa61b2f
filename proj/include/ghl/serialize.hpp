#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace ghl {

// All numeric output goes through one formatter (12 significant digits) so
// CSV and JSON files round-trip and stay byte-identical across runs.
inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string to_csv() const;
    std::string to_json() const;  // array of row objects
};

// Minimal CSV reader for round-trip tests and config-free tooling; handles
// only the unquoted numeric tables this library writes.
Table read_csv(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ghl
