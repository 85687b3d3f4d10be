#include "rescon/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace rescon {

namespace {

// Anchor colors of the viridis ramp, expanded to 256 steps by linear
// interpolation.
constexpr std::array<std::array<int, 3>, 9> kAnchors = {{
    {68, 1, 84},
    {71, 44, 122},
    {59, 81, 139},
    {44, 113, 142},
    {33, 144, 141},
    {39, 173, 129},
    {92, 200, 99},
    {170, 220, 50},
    {253, 231, 37},
}};

std::array<std::array<unsigned char, 3>, 256> build_ramp() {
    std::array<std::array<unsigned char, 3>, 256> ramp{};
    for (int i = 0; i < 256; ++i) {
        const double t = static_cast<double>(i) / 255.0 *
                         static_cast<double>(kAnchors.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(t));
        const std::size_t hi = std::min(lo + 1, kAnchors.size() - 1);
        const double f = t - static_cast<double>(lo);
        for (int c = 0; c < 3; ++c) {
            const double v = (1.0 - f) * kAnchors[lo][c] + f * kAnchors[hi][c];
            ramp[i][c] = static_cast<unsigned char>(std::lround(v));
        }
    }
    return ramp;
}

std::string rgb(const std::array<unsigned char, 3>& c) {
    std::ostringstream ss;
    ss << "rgb(" << static_cast<int>(c[0]) << "," << static_cast<int>(c[1])
       << "," << static_cast<int>(c[2]) << ")";
    return ss.str();
}

}  // namespace

const std::array<std::array<unsigned char, 3>, 256>& viridis_ramp() {
    static const auto ramp = build_ramp();
    return ramp;
}

std::string render_heatmap_svg(const SweepGrid& grid, const SvgOptions& options) {
    const std::size_t nr = grid.row_count();
    const std::size_t nc = grid.col_count();
    const int cs = options.cell_size;
    const int margin_left = 60;
    const int margin_top = options.title.empty() ? 16 : 34;
    const int margin_bottom = 36;
    const int margin_right = 16;
    const int width = margin_left + static_cast<int>(nc) * cs + margin_right;
    const int height = margin_top + static_cast<int>(nr) * cs + margin_bottom;

    // Value range over valid cells (positive cells only in log mode).
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const auto v = grid.value(i, j);
            if (!v || (options.log_scale && *v <= 0.0)) {
                continue;
            }
            vmin = std::min(vmin, *v);
            vmax = std::max(vmax, *v);
        }
    }
    const bool empty_range = !(vmin <= vmax);
    auto normalize = [&](double v) {
        if (empty_range || vmax == vmin) {
            return 0.5;
        }
        if (options.log_scale) {
            return (std::log(v) - std::log(vmin)) /
                   (std::log(vmax) - std::log(vmin));
        }
        return (v - vmin) / (vmax - vmin);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << width / 2
            << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\" "
               "font-family=\"sans-serif\">"
            << options.title << "</text>\n";
    }

    const auto& ramp = viridis_ramp();
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const int x = margin_left + static_cast<int>(j) * cs;
            const int y = margin_top + static_cast<int>(i) * cs;
            std::string fill = "rgb(220,220,220)";
            const auto v = grid.value(i, j);
            if (v && !(options.log_scale && *v <= 0.0)) {
                const double t = std::clamp(normalize(*v), 0.0, 1.0);
                fill = rgb(ramp[static_cast<std::size_t>(std::lround(t * 255.0))]);
            }
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cs
                << "\" height=\"" << cs << "\" fill=\"" << fill << "\"/>\n";
        }
    }

    // Maps a column axis value to its horizontal pixel position.
    const auto& cvals = grid.cols().values;
    auto col_to_px = [&](double value) {
        std::size_t j = 0;
        while (j + 1 < nc && cvals[j + 1] < value) {
            ++j;
        }
        double frac = 0.0;
        if (j + 1 < nc && cvals[j + 1] != cvals[j]) {
            frac = (value - cvals[j]) / (cvals[j + 1] - cvals[j]);
        }
        return margin_left + (static_cast<double>(j) + frac + 0.5) * cs;
    };

    if (!options.row_contour.empty()) {
        std::ostringstream pts;
        bool open = false;
        for (std::size_t i = 0; i < nr && i < options.row_contour.size(); ++i) {
            const auto& c = options.row_contour[i];
            if (!c) {
                continue;
            }
            pts << (open ? " " : "") << col_to_px(*c) << ","
                << margin_top + (static_cast<double>(i) + 0.5) * cs;
            open = true;
        }
        if (open) {
            svg << "<polyline points=\"" << pts.str()
                << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
                   "stroke-dasharray=\"5,3\"/>\n";
        }
    }

    // Axis extent labels.
    const auto& rvals = grid.rows().values;
    svg << "<text x=\"" << margin_left << "\" y=\"" << height - 16
        << "\" font-size=\"10\" font-family=\"sans-serif\">"
        << format_double(cvals.front()) << "</text>\n";
    svg << "<text x=\"" << margin_left + static_cast<int>(nc) * cs
        << "\" y=\"" << height - 16
        << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
        << format_double(cvals.back()) << "</text>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 4
        << "\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">"
        << grid.cols().name << "</text>\n";
    svg << "<text x=\"" << margin_left - 6 << "\" y=\"" << margin_top + 10
        << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
        << format_double(rvals.front()) << "</text>\n";
    svg << "<text x=\"" << margin_left - 6 << "\" y=\""
        << margin_top + static_cast<int>(nr) * cs
        << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
        << format_double(rvals.back()) << "</text>\n";
    svg << "<text x=\"12\" y=\"" << margin_top + static_cast<int>(nr) * cs / 2
        << "\" font-size=\"11\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 12 "
        << margin_top + static_cast<int>(nr) * cs / 2 << ")\" "
           "text-anchor=\"middle\">"
        << grid.rows().name << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace rescon
