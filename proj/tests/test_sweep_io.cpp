#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rescon/svg.hpp"
#include "rescon/sweep_grid.hpp"

using namespace rescon;

TEST_CASE("axis linspace covers both endpoints") {
    const Axis a = Axis::linspace("x", 0.5, 5.0, 10);
    REQUIRE(a.values.size() == 10);
    CHECK(a.values.front() == doctest::Approx(0.5));
    CHECK(a.values.back() == doctest::Approx(5.0));
    const Axis single = Axis::linspace("x", 2.0, 3.0, 1);
    REQUIRE(single.values.size() == 1);
    CHECK(single.values[0] == doctest::Approx(2.0));
}

TEST_CASE("grid cell accounting") {
    SweepGrid g(Axis{"r", {1.0, 2.0}}, Axis{"c", {0.1, 0.2, 0.3}});
    g.set(0, 0, 0.5);
    g.mask(1, 2, "why");
    CHECK(g.at(0, 0) == 0.5);
    CHECK(g.is_masked(1, 2));
    CHECK(g.mask_reason(1, 2) == "why");
    CHECK(!g.value(1, 2).has_value());
    CHECK(g.masked_count() == 1);
    CHECK_THROWS_AS(g.at(1, 2), Error);
}

TEST_CASE("csv layout with NA cells") {
    SweepGrid g(Axis{"n", {5.0, 10.0}}, Axis{"lambda", {0.0, 0.5}});
    g.set(0, 0, 0.125);
    g.mask(0, 1, "skip");
    g.set(1, 0, 1e-8);
    g.set(1, 1, 0.75);
    std::ostringstream os;
    g.to_csv(os);
    CHECK(os.str() ==
          "n\\lambda,0,0.5\n"
          "5,0.125,NA\n"
          "10,1e-08,0.75\n");
}

TEST_CASE("doubles print in shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(1e-300) == "1e-300");
    const double third = 1.0 / 3.0;
    CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("json round trip is exact") {
    SweepGrid g(Axis{"a", {1.0, 2.0, 3.0}}, Axis{"b", {4.0, 5.0}});
    g.set(0, 0, 1.0 / 3.0);
    g.set(0, 1, 0.0);
    g.mask(1, 0, "reason-a");
    g.set(1, 1, 1e-17);
    g.set(2, 0, -2.5);
    g.mask(2, 1, "reason-b");
    const SweepGrid back = SweepGrid::from_json(g.to_json());
    CHECK(back == g);
    CHECK(back.to_csv() == g.to_csv());
    CHECK(back.mask_reason(1, 0) == "reason-a");
}

TEST_CASE("equality ignores values of masked cells") {
    SweepGrid a(Axis{"r", {1.0}}, Axis{"c", {1.0, 2.0}});
    SweepGrid b = a;
    a.set(0, 0, 0.5);
    b.set(0, 0, 0.5);
    a.mask(0, 1, "m");
    b.mask(0, 1, "m");
    CHECK(a == b);
    b.mask(0, 1, "other");
    CHECK(!(a == b));
}

TEST_CASE("svg rendering produces a parseable document") {
    SweepGrid g(Axis{"r", {1.0, 2.0}}, Axis{"c", {0.0, 1.0, 2.0}});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            g.set(i, j, static_cast<double>(i + j) / 4.0);
        }
    }
    g.mask(0, 2, "hole");
    SvgOptions opts;
    opts.title = "demo";
    opts.row_contour = {1.0, std::nullopt};
    const std::string svg = render_heatmap_svg(g, opts);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("demo") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("rgb(220,220,220)") != std::string::npos);  // masked cell
    // Log scale over positive values also renders.
    SweepGrid pos(Axis{"r", {1.0}}, Axis{"c", {1.0, 2.0}});
    pos.set(0, 0, 1e-6);
    pos.set(0, 1, 1e-1);
    SvgOptions log_opts;
    log_opts.log_scale = true;
    CHECK(render_heatmap_svg(pos, log_opts).find("</svg>") != std::string::npos);
}

TEST_CASE("color ramp spans the standard endpoints") {
    const auto& ramp = viridis_ramp();
    CHECK(static_cast<int>(ramp[0][0]) == 68);
    CHECK(static_cast<int>(ramp[0][2]) == 84);
    CHECK(static_cast<int>(ramp[255][0]) == 253);
    CHECK(static_cast<int>(ramp[255][1]) == 231);
}
