#include <catch2/catch_amalgamated.hpp>

#include "ltrank/svg.hpp"

using namespace ltrank;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("curve chart contracts") {
  SECTION("one polyline per series, axes over [0, 0.5]") {
    std::vector<CurveSeries> series{
        {"A", 0, {0.1, 0.2, 0.3}, {0.2, 0.5, 0.9}, {}},
        {"B", 1, {0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, {}},
    };
    std::string svg = render_curves_svg("toy", series, 0.5);
    CHECK(count_occurrences(svg, "<polyline") == 2);
    CHECK(count_occurrences(svg, "class=\"band\"") == 0);
    CHECK_THAT(svg, ContainsSubstring(">0.5</text>"));  // x axis end tick
    CHECK_THAT(svg, ContainsSubstring(">1</text>"));    // y axis top tick
    CHECK_THAT(svg, ContainsSubstring("</svg>"));
  }
  SECTION("random-threshold series carry a std band") {
    std::vector<CurveSeries> series{
        {"A", 0, {0.1, 0.2}, {0.4, 0.6}, {0.05, 0.1}},
    };
    std::string svg = render_curves_svg("toy", series, 0.5);
    CHECK(count_occurrences(svg, "class=\"band\"") == 1);
  }
  SECTION("a constant series at 1.0 hugs the top axis") {
    std::vector<CurveSeries> series{
        {"A", 0, {0.1, 0.5}, {1.0, 1.0}, {}},
    };
    std::string svg = render_curves_svg("toy", series, 0.5);
    // the polyline's two points share the y coordinate of the top tick
    auto pos = svg.find("<polyline");
    REQUIRE(pos != std::string::npos);
    CHECK_THAT(svg.substr(pos), ContainsSubstring("36.00"));
  }
  SECTION("empty input is an error") {
    CHECK_THROWS(render_curves_svg("toy", {}, 0.5));
    std::vector<CurveSeries> bad{{"A", 0, {}, {}, {}}};
    CHECK_THROWS(render_curves_svg("toy", bad, 0.5));
  }
}

TEST_CASE("box statistics") {
  SECTION("three ranks: median 2, whiskers 1 and 3") {
    BoxStats b = box_stats({1, 2, 3});
    CHECK(b.min == 1.0);
    CHECK(b.median == 2.0);
    CHECK(b.max == 3.0);
    CHECK(b.q1 == 1.5);
    CHECK(b.q3 == 2.5);
    CHECK_THAT(b.mean, WithinAbs(2.0, 1e-15));
  }
  SECTION("identical ranks collapse the box to zero height") {
    BoxStats b = box_stats({4, 4, 4, 4});
    CHECK(b.min == 4.0);
    CHECK(b.q1 == 4.0);
    CHECK(b.median == 4.0);
    CHECK(b.q3 == 4.0);
    CHECK(b.max == 4.0);
  }
  SECTION("single sample degenerates to a point") {
    BoxStats b = box_stats({2});
    CHECK(b.min == 2.0);
    CHECK(b.max == 2.0);
    CHECK(b.median == 2.0);
  }
  SECTION("empty sample is an error") { CHECK_THROWS(box_stats({})); }
}

TEST_CASE("boxplot rendering") {
  std::vector<std::pair<std::string, BoxStats>> boxes;
  boxes.emplace_back("COMM", box_stats({1, 1, 2}));
  boxes.emplace_back("MV", box_stats({2, 3, 3}));
  boxes.emplace_back("PC", box_stats({5, 6, 7}));
  std::string svg =
      render_boxplot_svg("ranks", boxes, 0.5, 7.5, "Schulze rank (1 = best)");
  CHECK(count_occurrences(svg, "class=\"box\"") == 3);
  CHECK(count_occurrences(svg, "class=\"mean\"") == 3);
  CHECK_THAT(svg, ContainsSubstring("COMM"));
  CHECK_THAT(svg, ContainsSubstring(">PC</text>"));
}
