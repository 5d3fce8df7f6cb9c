#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace entmap::cli {

/// Dependency-free SVG scatter/polyline writer. Fixed 800x600 viewbox, 40px
/// margins, linear axes auto-scaled to the data with 5% padding; points drawn
/// as 2px circles. Every plot carries the measure-convention footnote.
struct SvgPlot {
    std::string x_label;
    std::string y_label;
    nlohmann::json config; // reproducibility comment
    std::vector<std::array<double, 2>> scatter;
    std::vector<std::array<double, 2>> path; // polyline, drawn over the scatter

    std::string render() const;
};

} // namespace entmap::cli
