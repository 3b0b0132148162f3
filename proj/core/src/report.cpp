// Copyright 2026 The bidauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "bidauction/harness.hpp"

namespace bidauction {

namespace {

constexpr const char* kCsvHeader = "mechanism,L,mean_utility_per_unit,stderr,replications";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    if (r.mechanism.find(',') != std::string::npos) {
      throw std::invalid_argument("mechanism label contains a comma: " + r.mechanism);
    }
    out << r.mechanism << ',' << r.units << ',' << format_double(r.mean_utility_per_unit) << ','
        << format_double(r.standard_error) << ',' << r.replications << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("results CSV: missing or unexpected header");
  }
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) {
      throw std::runtime_error("results CSV line " + std::to_string(line_no) + ": expected 5 fields");
    }
    ResultRow r;
    try {
      r.mechanism = f[0];
      r.units = std::stoi(f[1]);
      r.mean_utility_per_unit = std::stod(f[2]);
      r.standard_error = std::stod(f[3]);
      r.replications = std::stol(f[4]);
    } catch (const std::logic_error&) {
      throw std::runtime_error("results CSV line " + std::to_string(line_no) + ": bad number");
    }
    rows.push_back(r);
  }
  return rows;
}

std::string render_results_svg(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no results to plot");
  constexpr double kWidth = 760, kHeight = 480;
  constexpr double kLeft = 80, kRight = 220, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::vector<std::string> order;
  std::map<std::string, std::vector<const ResultRow*>> series;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : rows) {
    if (r.units <= 0) throw std::invalid_argument("L must be positive on a log axis");
    if (!series.count(r.mechanism)) order.push_back(r.mechanism);
    series[r.mechanism].push_back(&r);
    xmin = std::min(xmin, std::log10(r.units));
    xmax = std::max(xmax, std::log10(r.units));
    ymin = std::min(ymin, r.mean_utility_per_unit - r.standard_error);
    ymax = std::max(ymax, r.mean_utility_per_unit + r.standard_error);
  }
  if (xmax - xmin < 1e-9) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-9) { ymin -= 1.0; ymax += 1.0; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const auto px = [&](double units) { return kLeft + (std::log10(units) - xmin) / (xmax - xmin) * plot_w; };
  const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade and half-decade ticks.
  for (double e = std::floor(xmin * 2) / 2; e <= xmax + 1e-9; e += 0.5) {
    if (e < xmin - 1e-9) continue;
    const double x = kLeft + (e - xmin) / (xmax - xmin) * plot_w;
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << fixed(x) << "\" y2=\""
        << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(x) << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
        << xml_escape(fixed(std::pow(10.0, e), 0)) << "</text>\n";
  }
  for (int j = 0; j <= 5; ++j) {
    const double v = ymin + (ymax - ymin) * j / 5.0;
    const double y = py(v);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fixed(y) << "\" x2=\"" << kLeft << "\" y2=\"" << fixed(y)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">" << fixed(v, 3)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">L (units, log scale)</text>\n"
      << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << kTop + plot_h / 2 << ")\">auctioneer utility per unit</text>\n";

  for (std::size_t s = 0; s < order.size(); ++s) {
    const std::string color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    auto pts = series[order[s]];
    std::sort(pts.begin(), pts.end(), [](const ResultRow* a, const ResultRow* b) { return a->units < b->units; });
    svg << "<g class=\"series\" data-mechanism=\"" << xml_escape(order[s]) << "\">\n<polyline fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < pts.size(); ++j) {
      svg << (j ? " " : "") << fixed(px(pts[j]->units)) << ',' << fixed(py(pts[j]->mean_utility_per_unit));
    }
    svg << "\"/>\n";
    for (const ResultRow* r : pts) {
      const double x = px(r->units);
      svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(py(r->mean_utility_per_unit - r->standard_error))
          << "\" x2=\"" << fixed(x) << "\" y2=\"" << fixed(py(r->mean_utility_per_unit + r->standard_error))
          << "\" stroke=\"" << color << "\"/>\n"
          << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(py(r->mean_utility_per_unit)) << "\" r=\"2.5\" fill=\""
          << color << "\"/>\n";
    }
    svg << "</g>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
    const double lx = kLeft + plot_w + 15;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4 << "\">" << xml_escape(order[s]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_results(const std::vector<ResultRow>& rows, const std::filesystem::path& csv_path,
                  const std::filesystem::path& svg_path) {
  if (rows.empty()) throw std::invalid_argument("no results to write");
  const std::string svg = render_results_svg(rows);
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
  write_results_csv(rows, csv);
  if (!csv.flush()) throw std::runtime_error("failed writing '" + csv_path.string() + "'");
  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("cannot write '" + svg_path.string() + "'");
  out << svg;
  if (!out.flush()) throw std::runtime_error("failed writing '" + svg_path.string() + "'");
}

}  // namespace bidauction
