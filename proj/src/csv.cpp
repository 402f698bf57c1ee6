// SPDX-License-Identifier: Apache-2.0

#include "biharm/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace biharm::csv
{

std::string fmt(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
  {
    throw std::runtime_error("csv: cannot format value");
  }
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line)
{
  if (!line.empty() && line.back() == '\r')
  {
    line.remove_suffix(1);
  }
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true)
  {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos)
    {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field)
{
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
  {
    throw std::invalid_argument("csv: malformed number '" + std::string(field) + "'");
  }
  return v;
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
  {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os)
  {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace biharm::csv
