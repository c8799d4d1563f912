#include "edgeworth/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "edgeworth/config.hpp"

namespace edgeworth {

namespace {

struct SeriesPoint {
    double n = 0.0;
    double value = 0.0;  // |difference|
    double ci = 0.0;     // 1.96 * combined stderr
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

std::string render_report_svg(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw ConfigError("malformed report CSV: no header");
    auto col = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ConfigError("malformed report CSV: missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_n = col("n");
    const std::size_t c_mc = col("mc_mean"), c_mc_se = col("mc_stderr");
    const std::size_t c_z = col("zeroth_mean"), c_z_se = col("zeroth_stderr");
    const std::size_t c_e = col("expansion_mean"), c_e_se = col("expansion_stderr");

    std::vector<SeriesPoint> vs_zeroth, vs_expansion;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw ConfigError("malformed report CSV: bad row width");
        try {
            const double n = std::stod(f[c_n]);
            const double mc = std::stod(f[c_mc]), mc_se = std::stod(f[c_mc_se]);
            const double z = std::stod(f[c_z]), z_se = std::stod(f[c_z_se]);
            const double e = std::stod(f[c_e]), e_se = std::stod(f[c_e_se]);
            vs_zeroth.push_back({n, std::abs(mc - z), 1.96 * std::hypot(mc_se, z_se)});
            vs_expansion.push_back({n, std::abs(mc - e), 1.96 * std::hypot(mc_se, e_se)});
        } catch (const std::exception&) {
            throw ConfigError("malformed report CSV: non-numeric field");
        }
    }
    if (vs_zeroth.empty()) throw ConfigError("malformed report CSV: no data rows");

    // Log-log extents with a floor so zero differences stay plottable.
    double y_min = 1e300, y_max = -1e300, x_min = 1e300, x_max = -1e300;
    const double kFloor = 1e-12;
    for (const auto* s : {&vs_zeroth, &vs_expansion}) {
        for (const auto& p : *s) {
            x_min = std::min(x_min, p.n);
            x_max = std::max(x_max, p.n);
            y_min = std::min(y_min, std::max(kFloor, p.value - p.ci));
            y_max = std::max(y_max, std::max(kFloor, p.value + p.ci));
        }
    }
    if (x_min == x_max) x_max = x_min * 2.0;
    if (y_min == y_max) y_max = y_min * 10.0;

    const double width = 640.0, height = 480.0;
    const double ml = 70.0, mr = 20.0, mt = 30.0, mb = 50.0;
    const double lx0 = std::log10(x_min), lx1 = std::log10(x_max);
    const double ly0 = std::log10(y_min), ly1 = std::log10(y_max);
    auto px = [&](double n) {
        return ml + (std::log10(n) - lx0) / (lx1 - lx0) * (width - ml - mr);
    };
    auto py = [&](double v) {
        const double lv = std::log10(std::max(kFloor, v));
        return height - mb - (lv - ly0) / (ly1 - ly0) * (height - mt - mb);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
        << width - mr << "\" y2=\"" << height - mb
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (width / 2) << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">n (log)</text>\n";
    svg << "<text x=\"16\" y=\"" << (height / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (height / 2) << ")\">|difference| (log)</text>\n";
    // x tick labels at data points
    for (const auto& p : vs_zeroth) {
        svg << "<text x=\"" << px(p.n) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(p.n)
            << "</text>\n";
    }
    // y tick labels at decades
    for (int d = static_cast<int>(std::floor(ly0)); d <= static_cast<int>(std::ceil(ly1)); ++d) {
        const double v = std::pow(10.0, d);
        if (v < y_min / 10.0 || v > y_max * 10.0) continue;
        const double y = py(v);
        if (y < mt || y > height - mb) continue;
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
    }

    auto draw_series = [&](const std::vector<SeriesPoint>& s, const char* color,
                           const char* label, double legend_y) {
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : s) svg << px(p.n) << ',' << py(p.value) << ' ';
        svg << "\"/>\n";
        for (const auto& p : s) {
            const double x = px(p.n);
            svg << "<circle cx=\"" << x << "\" cy=\"" << py(p.value)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            svg << "<line x1=\"" << x << "\" y1=\"" << py(p.value + p.ci)
                << "\" x2=\"" << x << "\" y2=\"" << py(std::max(kFloor, p.value - p.ci))
                << "\" stroke=\"" << color << "\"/>\n";
        }
        svg << "<text x=\"" << width - mr - 180 << "\" y=\"" << legend_y
            << "\" font-size=\"12\" fill=\"" << color << "\">" << label
            << "</text>\n";
    };
    draw_series(vs_zeroth, "#d62728", "|mc - zeroth order|", mt + 14);
    draw_series(vs_expansion, "#1f77b4", "|mc - expansion|", mt + 30);
    svg << "</svg>\n";
    return svg.str();
}

void plot_report_csv(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open report CSV: " + csv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string svg = render_report_svg(buf.str());
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output SVG: " + svg_path);
    out << svg;
}

}  // namespace edgeworth
