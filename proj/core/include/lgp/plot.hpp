#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lgp/engine.hpp"

namespace lgp {

/// Renders a four-series line chart (max, mean, median, min against
/// generation) as a standalone SVG document with a legend and axis labels.
/// Throws std::invalid_argument on an empty series.
std::string render_stats_svg(const std::vector<GenerationStats>& series);

/// render_stats_svg written to disk; throws std::runtime_error when the path
/// cannot be opened.
void write_stats_svg(const std::vector<GenerationStats>& series,
                     const std::filesystem::path& path);

}  // namespace lgp
