#pragma once

#include <string>

namespace edgeworth {

/// Render a report CSV as an SVG log-log chart of |mc - zeroth| and
/// |mc - expansion| versus n, with 1.96-sigma whiskers. Pure
/// file-to-file transformation with deterministic output bytes.
void plot_report_csv(const std::string& csv_path, const std::string& svg_path);

std::string render_report_svg(const std::string& csv_text);

}  // namespace edgeworth
