#include "breather/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "breather/csv.hpp"

namespace breather {

namespace {

constexpr double kWidth = 860, kHeight = 560;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 70;
const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double map(double v, double pix_lo, double pix_hi) const {
        double x = log ? std::log10(v) : v;
        return pix_lo + (x - lo) / (hi - lo) * (pix_hi - pix_lo);
    }
};

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    double step = std::pow(10.0, std::floor(std::log10(span / target)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * mult) <= target) {
            step *= mult;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 0.5 * step; v += step) ticks.push_back(v);
    return ticks;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_line_plot(const std::string& path, const std::vector<Series>& series,
                     const PlotOptions& options) {
    Axis ax{0, 1, options.log_x}, ay{0, 1, options.log_y};
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = s.x[i], yv = s.y[i];
            if (options.log_x && !(xv > 0.0)) continue;
            if (options.log_y && !(yv > 0.0)) continue;
            const double tx = options.log_x ? std::log10(xv) : xv;
            const double ty = options.log_y ? std::log10(yv) : yv;
            xlo = std::min(xlo, tx); xhi = std::max(xhi, tx);
            ylo = std::min(ylo, ty); yhi = std::max(yhi, ty);
        }
    }
    if (!(xhi > xlo)) { xlo -= 0.5; xhi += 0.5; }
    if (!(yhi > ylo)) { ylo -= 0.5; yhi += 0.5; }
    const double pad_y = 0.05 * (yhi - ylo);
    ax.lo = xlo; ax.hi = xhi;
    ay.lo = ylo - pad_y; ay.hi = yhi + pad_y;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"26\" font-size=\"17\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" << escape(options.title) << "</text>\n";

    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;  // y grows upward

    // frame + ticks
    svg << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
        << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : nice_ticks(ax.lo, ax.hi)) {
        const double px = ax.log ? Axis{ax.lo, ax.hi, false}.map(t, px0, px1)
                                 : ax.map(t, px0, px1);
        svg << "<line x1=\"" << px << "\" y1=\"" << py0 << "\" x2=\"" << px << "\" y2=\""
            << py0 + 5 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << py0 + 20
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << (ax.log ? "1e" + fmt(t) : fmt(t)) << "</text>\n";
    }
    for (double t : nice_ticks(ay.lo, ay.hi)) {
        const double py = Axis{ay.lo, ay.hi, false}.map(t, py0, py1);
        svg << "<line x1=\"" << px0 - 5 << "\" y1=\"" << py << "\" x2=\"" << px0 << "\" y2=\""
            << py << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << px0 - 8 << "\" y=\"" << py + 4
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">"
            << (ay.log ? "1e" + fmt(t) : fmt(t)) << "</text>\n";
    }
    svg << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << kHeight - 18
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << escape(options.x_label) << "</text>\n"
        << "<text x=\"20\" y=\"" << (py0 + py1) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 " << (py0 + py1) / 2 << ")\">"
        << escape(options.y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double xv = s.x[i], yv = s.y[i];
            if (options.log_x) {
                if (!(xv > 0.0)) continue;
                xv = std::log10(xv);
            }
            if (options.log_y) {
                if (!(yv > 0.0)) continue;
                yv = std::log10(yv);
            }
            pts << Axis{ax.lo, ax.hi, false}.map(xv, px0, px1) << ","
                << Axis{ay.lo, ay.hi, false}.map(yv, py0, py1) << " ";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        if (!s.label.empty()) {
            const double ly = kTop + 16 + 18 * static_cast<double>(k);
            svg << "<line x1=\"" << px1 - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << px1 - 120
                << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
                << "<text x=\"" << px1 - 114 << "\" y=\"" << ly
                << "\" font-size=\"12\" font-family=\"sans-serif\">" << escape(s.label)
                << "</text>\n";
        }
    }
    svg << "</svg>\n";
    write_text_file(path, svg.str());
}

void write_binary_heatmap(const std::string& path,
                          const std::vector<std::vector<std::uint8_t>>& rows,
                          const std::vector<double>& times, const std::string& title) {
    if (rows.empty() || rows.size() != times.size())
        throw std::invalid_argument("write_binary_heatmap: rows/times mismatch");
    const std::size_t n_cells = rows.front().size();
    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    const double cell_w = (px1 - px0) / static_cast<double>(n_cells);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"26\" font-size=\"17\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" << escape(title) << "</text>\n"
        << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
        << "\" height=\"" << py0 - py1 << "\" fill=\"#f2d57e\"/>\n";

    const double t_lo = times.front(), t_hi = times.back();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const double y_top =
            (k + 1 < rows.size())
                ? py0 + (times[k + 1] - t_lo) / (t_hi - t_lo) * (py1 - py0)
                : py1;
        const double y_bot = py0 + (times[k] - t_lo) / (t_hi - t_lo) * (py1 - py0);
        std::size_t c = 0;
        while (c < n_cells) {
            if (!rows[k][c]) { ++c; continue; }
            std::size_t end = c;
            while (end < n_cells && rows[k][end]) ++end;
            svg << "<rect x=\"" << px0 + cell_w * static_cast<double>(c) << "\" y=\"" << y_top
                << "\" width=\"" << cell_w * static_cast<double>(end - c) << "\" height=\""
                << (y_bot - y_top) << "\" fill=\"#27548c\"/>\n";
            c = end;
        }
    }
    svg << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
        << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : nice_ticks(1.0, static_cast<double>(n_cells))) {
        const double px = px0 + (t - 0.5) * cell_w;
        if (t < 1.0 || px > px1) continue;
        svg << "<line x1=\"" << px << "\" y1=\"" << py0 << "\" x2=\"" << px << "\" y2=\""
            << py0 + 5 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << py0 + 20
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">" << fmt(t)
            << "</text>\n";
    }
    for (double t : nice_ticks(t_lo, t_hi)) {
        const double py = py0 + (t - t_lo) / (t_hi - t_lo) * (py1 - py0);
        svg << "<line x1=\"" << px0 - 5 << "\" y1=\"" << py << "\" x2=\"" << px0 << "\" y2=\""
            << py << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << px0 - 8 << "\" y=\"" << py + 4
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">" << fmt(t)
            << "</text>\n";
    }
    svg << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << kHeight - 18
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">cell index"
        << "</text>\n"
        << "<text x=\"20\" y=\"" << (py0 + py1) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 " << (py0 + py1) / 2 << ")\">t (1/nu)</text>\n"
        << "</svg>\n";
    write_text_file(path, svg.str());
}

}  // namespace breather
