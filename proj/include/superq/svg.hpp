/* Copyright 2026 The superq Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Minimal standalone SVG plots for quick inspection of scenario output.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace superq::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // non-positive values are dropped
  std::vector<Series> series;
};

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;       // columns
  std::vector<double> y;       // rows
  std::vector<double> values;  // row-major [row][col]; NaN drawn grey
};

void write_line_plot(const std::filesystem::path& path, const LinePlot& plot);
void write_heatmap(const std::filesystem::path& path, const Heatmap& map);

}  // namespace superq::svg
