#pragma once

#include <filesystem>
#include <string>

#include "rom/types.hpp"

namespace rom {

// Delimited-text formats: matrices lead with a "rows cols" line, then one
// whitespace-separated row per line; values carry 17 significant digits so
// doubles round-trip exactly. Index lists are one comma-separated line of
// 1-based integers.

std::string format_double(double v);  // %.17g

void write_matrix(const std::filesystem::path& path, const Mat& m);
Mat read_matrix(const std::filesystem::path& path);

void write_vector(const std::filesystem::path& path, const Vec& v);  // as a rows x 1 matrix
Vec read_vector(const std::filesystem::path& path);

void write_indices(const std::filesystem::path& path, const std::vector<int>& indices);
std::vector<int> read_indices(const std::filesystem::path& path);

// Minimal CSV with a header row; all fields either numeric or bare strings
// (no quoting or embedded separators needed at this scale).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace rom
