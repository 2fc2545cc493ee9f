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


#include "io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <locale>
#include <sstream>

namespace miaudit::cli {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_row(std::string_view line, std::vector<double>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto field = trim(line.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start));
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      return false;
    }
    out.push_back(v);
    if (comma == std::string_view::npos) return true;
    start = comma + 1;
  }
}

}  // namespace

Matrix read_csv_matrix(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!parse_row(line, row)) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw ConfigError(path + ":" + std::to_string(line_no) + ": not a numeric CSV row");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(rows.front().size()) + " fields, got " +
                        std::to_string(row.size()));
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ConfigError(path + ": no data rows");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

std::vector<RocPoint> read_curve_csv(const std::string& path) {
  const Matrix m = read_csv_matrix(path);
  if (m.cols() != 2) throw ConfigError(path + ": a curve needs exactly two columns");
  std::vector<RocPoint> out;
  for (Index i = 0; i < m.rows(); ++i) out.push_back({m(i, 0), m(i, 1)});
  return out;
}

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kLeft = 60, kTop = 20, kSize = 400;
constexpr double kLogFloor = -4.0;

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double px(double alpha, bool log_x) {
  double u = alpha;
  if (log_x) u = (std::max(std::log10(std::max(alpha, 1e-300)), kLogFloor) - kLogFloor) / -kLogFloor;
  return kLeft + kSize * std::clamp(u, 0.0, 1.0);
}

double py(double power) { return kTop + kSize * (1.0 - std::clamp(power, 0.0, 1.0)); }

}  // namespace

std::string render_svg(const std::vector<PlotCurve>& curves, bool log_x) {
  std::ostringstream svg;
  svg.imbue(std::locale::classic());
  const double width = kLeft + kSize + 240, height = kTop + kSize + 50;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";

  // Axes and ticks.
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kSize << "\" height=\""
      << kSize << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = py(i / 4.0);
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << coord(y + 4)
        << "\" text-anchor=\"end\">" << coord(i / 4.0) << "</text>\n";
    double x;
    std::string label;
    if (log_x) {
      x = kLeft + kSize * i / 4.0;
      label = i == 4 ? "1" : "1e" + std::to_string(static_cast<int>(kLogFloor) + i);
    } else {
      x = px(i / 4.0, false);
      label = coord(i / 4.0);
    }
    svg << "<text x=\"" << coord(x) << "\" y=\"" << kTop + kSize + 16
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + kSize / 2 << "\" y=\"" << kTop + kSize + 38
      << "\" text-anchor=\"middle\">false positive rate (alpha)</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + kSize / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + kSize / 2 << ")\">true positive rate (power)</text>\n";

  // Chance line.
  svg << "<polyline fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\" points=\"";
  for (int i = 0; i <= 64; ++i) {
    const double a = log_x ? std::pow(10.0, kLogFloor * (1.0 - i / 64.0)) : i / 64.0;
    svg << coord(px(a, log_x)) << ',' << coord(py(a)) << ' ';
  }
  svg << "\"/>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const char* color = kPalette[static_cast<std::size_t>(c.color) % kPalette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (c.dotted) svg << " stroke-dasharray=\"2,3\"";
    svg << " points=\"";
    for (const auto& p : c.points) svg << coord(px(p.fpr, log_x)) << ',' << coord(py(p.tpr)) << ' ';
    svg << "\"/>\n";

    const double ly = kTop + 12 + 18 * static_cast<double>(k);
    const double lx = kLeft + kSize + 16;
    svg << "<line x1=\"" << lx << "\" y1=\"" << coord(ly) << "\" x2=\"" << lx + 28 << "\" y2=\""
        << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (c.dotted) svg << " stroke-dasharray=\"2,3\"";
    svg << "/>\n";
    svg << "<text class=\"legend\" x=\"" << lx + 34 << "\" y=\"" << coord(ly + 4) << "\">"
        << escape_xml(c.label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace miaudit::cli
