#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rescon/sweep_grid.hpp"

namespace rescon {

// Self-contained SVG heatmap of a sweep grid, colored through a fixed
// 256-step viridis-like ramp. Masked cells are hatched grey. An
// optional per-row contour (column coordinate per row value) is drawn
// as a dashed overlay.
struct SvgOptions {
    bool log_scale = false;
    std::string title;
    std::vector<std::optional<double>> row_contour;  // one entry per row
    int cell_size = 12;
};

std::string render_heatmap_svg(const SweepGrid& grid,
                               const SvgOptions& options = {});

// The 256-entry color ramp, exposed for tests; entry i is {r, g, b}.
const std::array<std::array<unsigned char, 3>, 256>& viridis_ramp();

}  // namespace rescon
