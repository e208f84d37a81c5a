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
#include <utility>
#include <vector>

namespace pgas::cli {

struct Series {
  std::string label;
  std::vector<double> values;
};

// One panel per entry; every panel draws its series as polylines against the index.
struct Panel {
  std::string title;
  std::vector<Series> series;
};

void write_svg(const std::filesystem::path& path, const std::vector<Panel>& panels);

}  // namespace pgas::cli
