// Copyright 2026 The mi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "miaudit/common.hpp"
#include "miaudit/roc.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace miaudit::cli {

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_double(double v);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Numeric CSV, one row per line. A first line that does not parse as
/// numbers is treated as a header and skipped. All rows must have the same
/// number of fields.
Matrix read_csv_matrix(const std::string& path);

/// Two-column CSV (x,y) as a polyline, e.g. roc.csv or a theory curve.
std::vector<RocPoint> read_curve_csv(const std::string& path);

struct PlotCurve {
  std::string label;
  std::vector<RocPoint> points;
  bool dotted = false;
  int color = 0;  // palette index
};

/// ROC-style overlay: power against alpha with the chance diagonal, solid
/// or dotted polylines and one legend entry per curve.
std::string render_svg(const std::vector<PlotCurve>& curves, bool log_x);

}  // namespace miaudit::cli
