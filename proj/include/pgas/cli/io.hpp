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
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pgas::cli {

// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

// Table with header `t,<prefix>1,<prefix>2,...`; row k holds the values at time k (t is 1-based).
struct TimeSeries {
  std::vector<std::string> columns;  // excluding t
  Eigen::MatrixXd values;            // T × columns

  std::vector<double> column(std::size_t j) const;
};

// Reads a CSV with a `t` first column. Lines starting with '#' are skipped. Throws
// std::runtime_error naming the file and line on malformed input.
TimeSeries read_time_series(const std::filesystem::path& path);

void write_time_series(const std::filesystem::path& path, const std::string& prefix, const Eigen::MatrixXd& values,
                       const std::vector<std::string>& comments = {});

}  // namespace pgas::cli
