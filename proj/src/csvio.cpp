#include "elink/csvio.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "elink/common.hpp"

namespace elink::io {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_cell(double value) { return format_double(value); }

std::string format_cell(int value) { return std::to_string(value); }

int CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return static_cast<int>(k);
    return -1;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("write_csv: cannot open " + path.string());
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (k > 0) out << ',';
        out << header[k];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out << ',';
            out << row[k];
        }
        out << '\n';
    }
    if (!out) throw ValidationError("write_csv: write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("read_csv: cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) {
            double v = 0.0;
            auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc())
                throw ValidationError("read_csv: bad numeric cell '" + c + "' in " +
                                      path.string());
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string sha256_hex(const void* data, std::size_t size) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr) != 1)
        throw PhysicsError("sha256: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[digest[k] >> 4]);
        out.push_back(hex[digest[k] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("sha256_file: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string bytes = buffer.str();
    return sha256_hex(bytes.data(), bytes.size());
}

void write_manifest(const std::filesystem::path& directory,
                    const std::vector<std::string>& relative_paths,
                    const std::string& manifest_name) {
    std::vector<std::string> sorted = relative_paths;
    std::sort(sorted.begin(), sorted.end());
    std::ofstream out(directory / manifest_name, std::ios::binary);
    if (!out) throw ValidationError("write_manifest: cannot open manifest");
    for (const std::string& rel : sorted)
        out << rel << ' ' << sha256_file(directory / rel) << '\n';
}

} // namespace elink::io
