#include "gwl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gwl/errors.hpp"
#include "gwl/fit.hpp"

namespace gwl {

LineFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw ParamError("linear_fit: need >= 2 points");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ParamError("linear_fit: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    if (header.empty()) throw ParamError("write_csv: empty header");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("write_csv: cannot open " + path);
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw ParamError("write_csv: ragged row");
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_value(row[i]);
        os << "\n";
    }
}

namespace {

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void emit_plot(const std::vector<PlotSeries>& series, const std::string& path, bool log_x,
               bool log_y, const std::string& x_label, const std::string& y_label) {
    if (series.empty()) throw ParamError("emit_plot: no series");
    for (const auto& s : series)
        if (s.xs.size() != s.ys.size() || s.xs.size() < 2)
            throw ParamError("emit_plot: every series needs >= 2 points");

    auto tx = [&](double v) {
        if (!log_x) return v;
        if (!(v > 0.0)) throw ParamError("emit_plot: log-x requires positive data");
        return std::log10(v);
    };
    auto ty = [&](double v) {
        if (!log_y) return v;
        if (!(v > 0.0)) throw ParamError("emit_plot: log-y requires positive data");
        return std::log10(v);
    };

    double xmin = 1e308, xmax = -1e308, ymin = 1e308, ymax = -1e308;
    for (const auto& s : series)
        for (size_t i = 0; i < s.xs.size(); ++i) {
            xmin = std::min(xmin, tx(s.xs[i]));
            xmax = std::max(xmax, tx(s.xs[i]));
            ymin = std::min(ymin, ty(s.ys[i]));
            ymax = std::max(ymax, ty(s.ys[i]));
        }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (ty(v) - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("emit_plot: cannot open " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
          "viewBox=\"0 0 640 480\">\n";
    os << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    os << "<line x1=\"" << fmt_coord(ml) << "\" y1=\"" << fmt_coord(H - mb) << "\" x2=\""
       << fmt_coord(W - mr) << "\" y2=\"" << fmt_coord(H - mb)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt_coord(ml) << "\" y1=\"" << fmt_coord(mt) << "\" x2=\""
       << fmt_coord(ml) << "\" y2=\"" << fmt_coord(H - mb)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt_coord((ml + W - mr) / 2) << "\" y=\"" << fmt_coord(H - 12)
       << "\" font-size=\"14\" text-anchor=\"middle\">" << (log_x ? "log10 " : "") << x_label
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << fmt_coord((mt + H - mb) / 2)
       << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << fmt_coord((mt + H - mb) / 2) << ")\">" << (log_y ? "log10 " : "") << y_label
       << "</text>\n";
    // corner labels of the data range
    os << "<text x=\"" << fmt_coord(ml) << "\" y=\"" << fmt_coord(H - mb + 16)
       << "\" font-size=\"11\">" << fmt_label(xmin) << "</text>\n";
    os << "<text x=\"" << fmt_coord(W - mr) << "\" y=\"" << fmt_coord(H - mb + 16)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_label(xmax) << "</text>\n";
    os << "<text x=\"" << fmt_coord(ml - 4) << "\" y=\"" << fmt_coord(H - mb)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_label(ymin) << "</text>\n";
    os << "<text x=\"" << fmt_coord(ml - 4) << "\" y=\"" << fmt_coord(mt + 10)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_label(ymax) << "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        os << "<polyline fill=\"none\" stroke=\"" << kColors[si % 8]
           << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.xs.size(); ++i)
            os << (i ? " " : "") << fmt_coord(px(s.xs[i])) << "," << fmt_coord(py(s.ys[i]));
        os << "\"/>\n";
        os << "<text x=\"" << fmt_coord(W - mr - 4) << "\" y=\"" << fmt_coord(mt + 16 + 16 * si)
           << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << kColors[si % 8] << "\">"
           << s.name << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace gwl
