#include "primeperiod/csv.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "primeperiod/error.hpp"

namespace primeperiod {
namespace {

void append_value(std::string& out, double v, bool integral) {
    char buf[64];
    if (integral)
        std::snprintf(buf, sizeof buf, "%" PRId64, static_cast<std::int64_t>(v));
    else
        std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

}  // namespace

std::string format_csv(std::string_view config_hash, std::span<const CsvColumn> columns) {
    std::string out = "# config-hash: ";
    out += config_hash;
    out += '\n';
    std::size_t rows = 0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c].name;
        rows = std::max(rows, columns[c].values.size());
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            if (r < columns[c].values.size())
                append_value(out, columns[c].values[r], columns[c].integral);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path,
               std::string_view config_hash,
               std::span<const CsvColumn> columns) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    const auto text = format_csv(config_hash, columns);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError("failed writing " + path.string());
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace primeperiod
