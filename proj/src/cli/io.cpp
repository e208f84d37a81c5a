/*
 * Copyright 2026 The pgas-mc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pgas/cli/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pgas::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), res.ptr};
}

std::vector<double> TimeSeries::column(std::size_t j) const {
  std::vector<double> out(static_cast<std::size_t>(values.rows()));
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j));
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": not a number '" + s + "'");
  }
  return v;
}

}  // namespace

TimeSeries read_time_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  TimeSeries ts;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (!have_header) {
      if (cells.empty() || cells[0] != "t") throw std::runtime_error(path.string() + ": header must start with 't'");
      ts.columns.assign(cells.begin() + 1, cells.end());
      have_header = true;
      continue;
    }
    if (cells.size() != ts.columns.size() + 1) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": wrong number of columns");
    }
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(parse_double(cells[j], path, line_no));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error(path.string() + ": empty file");
  ts.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ts.columns.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t j = 0; j < rows[t].size(); ++j)
      ts.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = rows[t][j];
  return ts;
}

void write_time_series(const std::filesystem::path& path, const std::string& prefix, const Eigen::MatrixXd& values,
                       const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& c : comments) out << "# " << c << '\n';
  out << 't';
  for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << prefix << j + 1;
  out << '\n';
  for (Eigen::Index t = 0; t < values.rows(); ++t) {
    out << t + 1;
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << format_number(values(t, j));
    out << '\n';
  }
}

}  // namespace pgas::cli
