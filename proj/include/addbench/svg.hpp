#pragma once

#include <string>

#include "addbench/table.hpp"

namespace addbench {

enum class ChartKind { line, bar, heatmap };

// Renders a plot table to a self-contained SVG document.
// Expected columns: line -> series,x,y[,lo,hi]; bar -> series,x,count;
// heatmap -> x,y,count. Throws std::runtime_error on schema mismatch.
// An empty table renders a valid SVG carrying a "no data" annotation.
std::string emit_svg_chart(const Table& table, ChartKind kind, const std::string& title = "");

}  // namespace addbench
