#pragma once

#include <string>

#include "twintunnel/sweep.hpp"

namespace twintunnel {

struct PlotStyle {
  int width = 900;
  int height = 600;
  std::string title;
  std::string x_label = "q [m.u.]";
  std::string y_label = "probability";
};

/// Self-contained SVG line chart: one polyline per data column, split into
/// segments wherever a cell is empty, legend entries marked "(undefined)"
/// for all-empty columns.  Byte-deterministic for a fixed table.  Throws
/// std::invalid_argument for a table without rows or data columns.
std::string render_line_chart(const SweepTable& table, const PlotStyle& style);

}  // namespace twintunnel
