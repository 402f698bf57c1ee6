// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace biharm::csv
{

// Shortest representation that round-trips to the same double.
std::string fmt(double v);

// Splits a simple CSV line (no quoting).
std::vector<std::string_view> split(std::string_view line);

double parse_double(std::string_view field);

// Writes text with LF endings; throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path &path, const std::string &content);

}  // namespace biharm::csv
