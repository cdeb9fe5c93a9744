#include "twintunnel/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace twintunnel {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v, const char* fmt = "%.2f") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

// round the raw span up to a 1/2/5 ladder step so tick labels stay short
double nice_step(double span, int ticks) {
  const double raw = span / std::max(1, ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag * (1.0 + 1e-12)) return m * mag;
  return 10.0 * mag;
}

}  // namespace

std::string render_line_chart(const SweepTable& table, const PlotStyle& style) {
  if (table.rows.empty() || table.columns.size() < 2)
    throw std::invalid_argument("render_line_chart: table has no data");

  const size_t ncols = table.columns.size();
  double x_min = 1e300, x_max = -1e300, y_max = 0.0;
  for (const auto& row : table.rows) {
    if (row.size() != ncols) throw std::invalid_argument("render_line_chart: ragged table");
    if (!row[0]) throw std::invalid_argument("render_line_chart: empty abscissa cell");
    x_min = std::min(x_min, *row[0]);
    x_max = std::max(x_max, *row[0]);
    for (size_t c = 1; c < ncols; ++c)
      if (row[c]) y_max = std::max(y_max, *row[c]);
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  const double y_top = std::max(0.1, std::ceil(y_max * 10.0 + 1e-9) / 10.0);

  const double ml = 64, mr = 16, mt = style.title.empty() ? 16 : 40, mb = 46;
  const double pw = style.width - ml - mr;
  const double ph = style.height - mt - mb;
  const auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  const auto sy = [&](double y) { return mt + ph - y / y_top * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) +
         "\" height=\"" + std::to_string(style.height) + "\" viewBox=\"0 0 " +
         std::to_string(style.width) + " " + std::to_string(style.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty())
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(style.title) + "</text>\n";

  // grid and ticks
  const double xstep = nice_step(x_max - x_min, 8);
  const double ystep = nice_step(y_top, 6);
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double x = std::ceil(x_min / xstep) * xstep; x <= x_max + 1e-12; x += xstep) {
    svg += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(sx(x)) +
           "\" y2=\"" + num(mt + ph) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(mt + ph + 16) +
           "\" text-anchor=\"middle\">" + num(x, "%.4g") + "</text>\n";
  }
  for (double y = 0.0; y <= y_top + 1e-12; y += ystep) {
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(sy(y)) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(sy(y)) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(sy(y) + 4) +
           "\" text-anchor=\"end\">" + num(y, "%.4g") + "</text>\n";
  }
  svg += "</g>\n";

  // axes
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(ml + pw) +
         "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
         num(mt + ph) + "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
  svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(mt + ph + 36) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(style.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + num(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + num(mt + ph / 2) + ")\">" +
         xml_escape(style.y_label) + "</text>\n";

  // series: polyline segments separated by undefined cells
  for (size_t c = 1; c < ncols; ++c) {
    const char* color = kPalette[(c - 1) % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::vector<std::pair<double, double>> seg;
    bool any = false;
    const auto flush = [&] {
      if (seg.size() == 1) {
        svg += "<circle cx=\"" + num(seg[0].first) + "\" cy=\"" + num(seg[0].second) +
               "\" r=\"1.5\" fill=\"" + color + "\"/>\n";
      } else if (seg.size() > 1) {
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < seg.size(); ++i) {
          if (i) svg += ' ';
          svg += num(seg[i].first) + "," + num(seg[i].second);
        }
        svg += "\"/>\n";
      }
      seg.clear();
    };
    for (const auto& row : table.rows) {
      if (row[c]) {
        seg.emplace_back(sx(*row[0]), sy(*row[c]));
        any = true;
      } else {
        flush();
      }
    }
    flush();

    const double ly = mt + 14 + 16.0 * static_cast<double>(c - 1);
    svg += "<line x1=\"" + num(ml + pw - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(ml + pw - 126) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(ml + pw - 120) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(table.columns[c]) +
           (any ? "" : " (undefined)") + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace twintunnel
