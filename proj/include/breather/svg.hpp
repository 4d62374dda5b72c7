#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace breather {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;  // non-positive samples are dropped in log mode
};

/// Self-contained SVG line plot (axes, ticks, legend); no external assets.
void write_line_plot(const std::string& path, const std::vector<Series>& series,
                     const PlotOptions& options);

/// Binary heat map, cells on the x axis and time increasing upward. Runs of
/// equal values are merged into single rects per row.
void write_binary_heatmap(const std::string& path,
                          const std::vector<std::vector<std::uint8_t>>& rows,
                          const std::vector<double>& times, const std::string& title);

}  // namespace breather
