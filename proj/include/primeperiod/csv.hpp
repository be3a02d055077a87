#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primeperiod {

struct CsvColumn {
    std::string name;
    std::vector<double> values;
    bool integral = false;  // print without a fractional part
};

// UTF-8, '\n' line endings. The first line is "# config-hash: <hash>",
// followed by the header row and one row per value. Shorter columns leave
// trailing cells empty.
std::string format_csv(std::string_view config_hash, std::span<const CsvColumn> columns);

void write_csv(const std::filesystem::path& path,
               std::string_view config_hash,
               std::span<const CsvColumn> columns);

// Stable 64-bit FNV-1a digest rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace primeperiod
