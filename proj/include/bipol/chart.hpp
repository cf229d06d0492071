// Copyright 2026 The bipol Authors
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

#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "bipol/explain.hpp"

namespace bipol {

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

struct ChartStyle {
  int width{760};
  int label_width{230};
  int value_width{70};
  int bar_height{22};
  int bar_gap{8};
  int top{56};
  int bottom{24};
  const char* bar_color{"#4c72b0"};
};

/// Horizontal bar chart, one bar per term labeled `term (type)`. Output is a
/// pure function of the input, so identical records give identical bytes.
[[nodiscard]] inline std::string render_bar_chart(const std::vector<RankedTerm>& terms, std::string_view title,
                                                  const ChartStyle& style = {}) {
  const int rows = terms.empty() ? 1 : static_cast<int>(terms.size());
  const int height = style.top + rows * (style.bar_height + style.bar_gap) + style.bottom;
  const int plot_width = style.width - style.label_width - style.value_width;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + std::to_string(style.width / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
         detail::xml_escape(title) + "</text>\n";

  if (terms.empty()) {
    svg += "<text x=\"" + std::to_string(style.width / 2) + "\" y=\"" + std::to_string(style.top + style.bar_height / 2 + 4) +
           "\" text-anchor=\"middle\" fill=\"#666666\">no terms matched</text>\n";
    svg += "</svg>\n";
    return svg;
  }

  const double max_count = static_cast<double>(terms.front().count);
  int y = style.top;
  for (const auto& t : terms) {
    const double w = max_count > 0 ? plot_width * (static_cast<double>(t.count) / max_count) : 0.0;
    const std::string label = detail::xml_escape(t.term + " (" + t.type_name + ")");
    const int text_y = y + style.bar_height / 2 + 4;
    svg += "<g>\n";
    svg += "  <text x=\"" + std::to_string(style.label_width - 8) + "\" y=\"" + std::to_string(text_y) +
           "\" text-anchor=\"end\">" + label + "</text>\n";
    svg += "  <rect x=\"" + std::to_string(style.label_width) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
           detail::fixed2(w) + "\" height=\"" + std::to_string(style.bar_height) + "\" fill=\"" + style.bar_color +
           "\"><title>" + label + ": " + std::to_string(t.count) + "</title></rect>\n";
    svg += "  <text x=\"" + detail::fixed2(style.label_width + w + 6) + "\" y=\"" + std::to_string(text_y) + "\">" +
           std::to_string(t.count) + "</text>\n";
    svg += "</g>\n";
    y += style.bar_height + style.bar_gap;
  }
  svg += "<line x1=\"" + std::to_string(style.label_width) + "\" y1=\"" + std::to_string(style.top - 4) + "\" x2=\"" +
         std::to_string(style.label_width) + "\" y2=\"" + std::to_string(y - style.bar_gap + 4) +
         "\" stroke=\"#333333\"/>\n";
  svg += "</svg>\n";
  return svg;
}

/// Top-k chart for one axis of an explainability record.
[[nodiscard]] inline std::string emit_chart(const ExplainRecord& record, std::string_view axis, std::size_t k) {
  const auto ranked = top_k(record, axis, k);
  return render_bar_chart(ranked, "Top-" + std::to_string(k) + " " + std::string(axis) + " terms");
}

}  // namespace bipol
