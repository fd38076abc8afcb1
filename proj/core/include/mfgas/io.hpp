#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mfgas {

// Shortest round-trip formatting used for every CSV/JSON double we emit;
// keeps reruns byte-identical.
std::string format_double(double v);

std::string join_csv_row(const std::vector<double>& row);

// Headerless numeric CSV, one row per line.
void write_csv(const std::string& path, const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void ensure_directory(const std::string& path);

// FNV-1a, 64-bit; stable content fingerprints for the run manifests.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hash_hex(std::uint64_t h);

}
