#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace elink::io {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Cell renderer: integers print without a decimal point.
std::string format_cell(double value);
std::string format_cell(int value);

// Minimal CSV table: one header row, numeric cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const; // -1 when absent
};

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

CsvTable read_csv(const std::filesystem::path& path);

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_file(const std::filesystem::path& path);

// One line per file: "<relative-path> <sha-256-hex>", sorted by path.
void write_manifest(const std::filesystem::path& directory,
                    const std::vector<std::string>& relative_paths,
                    const std::string& manifest_name = "manifest.txt");

} // namespace elink::io
