#pragma once

#include <string>
#include <vector>

namespace gwl {

/// Scientific notation with 17 significant digits, '.' decimal point.
std::string format_value(double v);

/// UTF-8 comma-separated file with a mandatory header row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct PlotSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Standalone SVG with one polyline per series.  Byte-deterministic for
/// identical inputs.  Each series needs at least two points.
void emit_plot(const std::vector<PlotSeries>& series, const std::string& path, bool log_x = false,
               bool log_y = false, const std::string& x_label = "x",
               const std::string& y_label = "y");

}  // namespace gwl
