#pragma once

#include <string>
#include <vector>

namespace addbench {

// In-memory CSV table. Fields containing commas, quotes, or newlines are
// quoted on write; numeric columns are formatted by the caller.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static Table read_csv(const std::string& path);
    void write_csv(const std::string& path) const;
    std::string to_csv() const;

    std::size_t column(const std::string& name) const;  // throws if absent
};

// Shortest round-trip decimal representation (deterministic across runs).
std::string format_double(double v);

}  // namespace addbench
