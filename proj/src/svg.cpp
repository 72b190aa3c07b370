#include "addbench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace addbench {

namespace {

constexpr double kWidth = 840;
constexpr double kHeight = 520;
constexpr double kLeft = 70, kRight = 30, kTop = 50, kBottom = 55;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double parse_num(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("chart: non-numeric value in column ") + what + ": '" + s + "'");
    }
}

struct Scale {
    double lo = 0, hi = 1, px0 = 0, px1 = 1;
    double operator()(double v) const {
        if (hi == lo) return (px0 + px1) / 2;
        return px0 + (v - lo) / (hi - lo) * (px1 - px0);
    }
};

// A handful of round tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi, int target = 6) {
    if (hi <= lo) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) out.push_back(v);
    return out;
}

void open_svg(std::ostringstream& svg, const std::string& title) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
            << " font-size=\"16\">" << esc(title) << "</text>\n";
}

void axes(std::ostringstream& svg, const Scale& sx, const Scale& sy,
          const std::string& xlabel, const std::string& ylabel) {
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : ticks(sx.lo, sx.hi)) {
        const double x = sx(t);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\""
            << kTop + kPlotH << "\" stroke=\"#eee\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << kTop + kPlotH + 16 << "\" text-anchor=\"middle\">"
            << num(t) << "</text>\n";
    }
    for (double t : ticks(sy.lo, sy.hi)) {
        const double y = sy(t);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + kPlotW << "\" y2=\""
            << num(y) << "\" stroke=\"#eee\"/>\n";
        svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(t)
            << "</text>\n";
    }
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\"" << kPlotH
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-size=\"13\">" << esc(xlabel) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kTop + kPlotH / 2 << "\" text-anchor=\"middle\" font-size=\"13\""
        << " transform=\"rotate(-90 18 " << kTop + kPlotH / 2 << ")\">" << esc(ylabel) << "</text>\n";
    svg << "</g>\n";
}

void legend(std::ostringstream& svg, const std::vector<std::string>& names) {
    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    double x = kLeft + 8;
    const double y = kTop + 14;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
            << color << "\"/>\n";
        svg << "<text x=\"" << num(x + 14) << "\" y=\"" << num(y) << "\">" << esc(names[i]) << "</text>\n";
        x += 18 + 7.0 * static_cast<double>(names[i].size()) + 14;
    }
    svg << "</g>\n";
}

std::string no_data_svg(const std::string& title) {
    std::ostringstream svg;
    open_svg(svg, title);
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\" fill=\"#777\">"
        << "no data</text>\n</svg>\n";
    return svg.str();
}

void require_columns(const Table& t, std::size_t n, const char* kind) {
    if (t.header.size() < n)
        throw std::runtime_error(std::string("chart: ") + kind + " table needs at least " +
                                 std::to_string(n) + " columns");
}

std::string line_chart(const Table& t, const std::string& title) {
    require_columns(t, 3, "line");
    const bool banded = t.header.size() >= 5;

    struct Pt {
        double x, y, lo, hi;
    };
    std::map<std::string, std::vector<Pt>> series;
    std::vector<std::string> order;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& row : t.rows) {
        if (row.size() < t.header.size()) throw std::runtime_error("chart: ragged CSV row");
        Pt p{};
        p.x = parse_num(row[1], t.header[1].c_str());
        p.y = parse_num(row[2], t.header[2].c_str());
        p.lo = banded ? parse_num(row[3], t.header[3].c_str()) : p.y;
        p.hi = banded ? parse_num(row[4], t.header[4].c_str()) : p.y;
        auto [it, inserted] = series.try_emplace(row[0]);
        if (inserted) order.push_back(row[0]);
        it->second.push_back(p);
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min({ylo, p.y, p.lo});
        yhi = std::max({yhi, p.y, p.hi});
    }
    if (ylo == yhi) {
        ylo -= 0.5;
        yhi += 0.5;
    }

    Scale sx{xlo, xhi, kLeft, kLeft + kPlotW};
    Scale sy{ylo, yhi, kTop + kPlotH, kTop};

    std::ostringstream svg;
    open_svg(svg, title);
    axes(svg, sx, sy, t.header[1], t.header[2]);
    std::size_t idx = 0;
    for (const std::string& name : order) {
        const char* color = kPalette[idx++ % std::size(kPalette)];
        auto pts = series[name];
        std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
        if (banded) {
            std::ostringstream poly;
            for (const Pt& p : pts) poly << num(sx(p.x)) << "," << num(sy(p.hi)) << " ";
            for (auto it = pts.rbegin(); it != pts.rend(); ++it)
                poly << num(sx(it->x)) << "," << num(sy(it->lo)) << " ";
            svg << "<polygon points=\"" << poly.str() << "\" fill=\"" << color
                << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const Pt& p : pts) svg << num(sx(p.x)) << "," << num(sy(p.y)) << " ";
        svg << "\"/>\n";
    }
    legend(svg, order);
    svg << "</svg>\n";
    return svg.str();
}

std::string bar_chart(const Table& t, const std::string& title) {
    require_columns(t, 3, "bar");

    // stacked bars: x -> (series -> count)
    std::map<double, std::map<std::string, double>> stacks;
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const auto& row : t.rows) {
        if (row.size() < 3) throw std::runtime_error("chart: ragged CSV row");
        const double x = parse_num(row[1], t.header[1].c_str());
        const double c = parse_num(row[2], t.header[2].c_str());
        stacks[x][row[0]] += c;
        if (seen.insert(row[0]).second) order.push_back(row[0]);
    }
    double xlo = stacks.begin()->first, xhi = stacks.rbegin()->first, yhi = 0;
    for (const auto& [x, by_series] : stacks) {
        double total = 0;
        for (const auto& [name, c] : by_series) total += c;
        yhi = std::max(yhi, total);
    }
    if (yhi == 0) yhi = 1;
    const double span = std::max(xhi - xlo, 1.0);
    const double bar_w = std::max(1.0, kPlotW / (span + 1) * 0.8);

    Scale sx{xlo, xhi + 1, kLeft, kLeft + kPlotW};
    Scale sy{0, yhi, kTop + kPlotH, kTop};

    std::ostringstream svg;
    open_svg(svg, title);
    axes(svg, sx, sy, t.header[1], t.header[2]);
    for (const auto& [x, by_series] : stacks) {
        double base = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto it = by_series.find(order[i]);
            if (it == by_series.end() || it->second == 0) continue;
            const double y0 = sy(base);
            const double y1 = sy(base + it->second);
            svg << "<rect x=\"" << num(sx(x)) << "\" y=\"" << num(y1) << "\" width=\""
                << num(bar_w) << "\" height=\"" << num(y0 - y1) << "\" fill=\""
                << kPalette[i % std::size(kPalette)] << "\"/>\n";
            base += it->second;
        }
    }
    legend(svg, order);
    svg << "</svg>\n";
    return svg.str();
}

std::string heatmap_chart(const Table& t, const std::string& title) {
    require_columns(t, 3, "heatmap");
    struct Cell {
        double x, y, c;
    };
    std::vector<Cell> cells;
    std::set<double> xs, ys;
    double cmax = 0;
    for (const auto& row : t.rows) {
        if (row.size() < 3) throw std::runtime_error("chart: ragged CSV row");
        Cell cell{parse_num(row[0], t.header[0].c_str()), parse_num(row[1], t.header[1].c_str()),
                  parse_num(row[2], t.header[2].c_str())};
        xs.insert(cell.x);
        ys.insert(cell.y);
        cmax = std::max(cmax, cell.c);
        cells.push_back(cell);
    }
    const double xlo = *xs.begin(), xhi = *xs.rbegin();
    const double ylo = *ys.begin(), yhi = *ys.rbegin();
    const double cw = kPlotW / (xhi - xlo + 1);
    const double ch = kPlotH / (yhi - ylo + 1);

    Scale sx{xlo, xhi + 1, kLeft, kLeft + kPlotW};
    Scale sy{ylo, yhi + 1, kTop + kPlotH, kTop};

    std::ostringstream svg;
    open_svg(svg, title);
    axes(svg, sx, sy, t.header[0], t.header[1]);
    for (const Cell& cell : cells) {
        const double frac = cmax > 0 ? cell.c / cmax : 0;
        const int r = static_cast<int>(255 - 205 * frac);
        const int g = static_cast<int>(255 - 155 * frac);
        svg << "<rect x=\"" << num(sx(cell.x)) << "\" y=\"" << num(sy(cell.y + 1)) << "\" width=\""
            << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"rgb(" << r << "," << g << ",255)\""
            << " stroke=\"#ccc\" stroke-width=\"0.5\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string emit_svg_chart(const Table& table, ChartKind kind, const std::string& title) {
    if (table.rows.empty()) return no_data_svg(title);
    switch (kind) {
        case ChartKind::line: return line_chart(table, title);
        case ChartKind::bar: return bar_chart(table, title);
        case ChartKind::heatmap: return heatmap_chart(table, title);
    }
    throw std::logic_error("unknown chart kind");
}

}  // namespace addbench
