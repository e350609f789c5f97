#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "lapden/data_io.hpp"
#include "lapden/error.hpp"
#include "oracles.hpp"

using namespace lapden;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

// Extracts the y coordinates of the first point of each polyline.
std::vector<double> first_points_y(const std::string& svg) {
    std::vector<double> ys;
    for (auto pos = svg.find("points=\""); pos != std::string::npos; pos = svg.find("points=\"", pos + 1)) {
        const auto comma = svg.find(',', pos);
        ys.push_back(std::stod(svg.substr(comma + 1, svg.find(' ', comma) - comma - 1)));
    }
    return ys;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
    const Signal1D s({1.5, -2.0, 3.25}, 0.5, -1.0);
    const auto back = parse_csv_1d(format_csv_1d(s));
    CHECK(back.values == s.values);
    CHECK(back.h == s.h);
    CHECK(back.a == s.a);

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> bits;
    std::vector<double> awkward;
    while (awkward.size() < 500) {
        const double v = std::bit_cast<double>(bits(rng));
        if (std::isfinite(v)) awkward.push_back(v);
    }
    awkward.push_back(std::numeric_limits<double>::denorm_min());
    awkward.push_back(-0.0);
    awkward.push_back(0.1);
    const Signal1D big(awkward, 1.0 / 3.0, 0.1);
    const auto rt = parse_csv_1d(format_csv_1d(big));
    REQUIRE(rt.size() == big.size());
    for (std::size_t k = 0; k < big.size(); ++k) CHECK(std::bit_cast<std::uint64_t>(rt.values[k]) == std::bit_cast<std::uint64_t>(big.values[k]));
    CHECK(rt.h == big.h);
}

TEST_CASE("CSV files on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "lapden_test_data_io";
    std::filesystem::create_directories(dir);
    const Signal1D s({0.1, 0.2, 0.30000000000000004});
    write_csv_1d(dir / "s.csv", s);
    CHECK(read_csv_1d(dir / "s.csv").values == s.values);
    CHECK_THROWS_AS(read_csv_1d(dir / "missing.csv"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("CSV parsing") {
    const auto s = parse_csv_1d("1\n2\n3\n");
    CHECK(s.values == std::vector<double>{1, 2, 3});
    CHECK(s.h == 1.0);
    CHECK(s.a == 0.0);

    CHECK(parse_csv_1d("# comment\n\n 4 \r\n# another\n5\n").values == std::vector<double>{4, 5});
    CHECK(parse_csv_1d("# h=0.25 a=2 b=2.5\n1\n2\n3\n").h == 0.25);

    try {
        parse_csv_1d("1\nabc\n3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_csv_1d(""), EmptyInput);
    CHECK_THROWS_AS(parse_csv_1d("# only a comment\n\n"), EmptyInput);
    CHECK_THROWS_AS(parse_csv_1d("1.5x\n"), ParseError);
}

TEST_CASE("PGM decoding") {
    const auto f = parse_pgm("P2 2 2 255 0 255 128 64");
    CHECK(f.rows == 2);
    CHECK(f.cols == 2);
    CHECK(f(0, 0) == 0.0);
    CHECK(f(0, 1) == 1.0);
    CHECK(f(1, 0) == 128.0 / 255.0);
    CHECK(f(1, 1) == 64.0 / 255.0);

    CHECK(parse_pgm("P2\n# a comment\n3 1\n# another\n15\n0 5 15\n")(0, 1) == doctest::Approx(1.0 / 3.0));
    const std::string p5 = std::string("P5 2 1 255\n") + char(0) + char(255);
    const auto g = parse_pgm(p5);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(0, 1) == 1.0);
}

TEST_CASE("PGM format errors") {
    CHECK_THROWS_AS(parse_pgm("P3 2 2 255 0 0 0 0"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2 2 2 255 0 1 2"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2 2 2 65535 0 1 2 3"), FormatError);
    CHECK_THROWS_AS(parse_pgm(std::string("P5 2 2 255\n") + "ab"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2 2 2 255 0 1 2 999"), FormatError);
    CHECK_THROWS_AS(parse_pgm(""), FormatError);
    try {
        parse_pgm("P7 1 1 255 0");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("magic") != std::string::npos);
    }
}

TEST_CASE("PGM encoding") {
    const Field2D zeros(3, 4, 1.0);
    const auto bytes = encode_pgm(zeros);
    const std::string header = "P5\n4 3\n255\n";
    REQUIRE(bytes.size() == header.size() + 12);
    CHECK(bytes.substr(0, header.size()) == header);
    for (std::size_t k = header.size(); k < bytes.size(); ++k) CHECK(bytes[k] == '\0');

    // Half-way values round to even; out-of-range values clamp.
    Field2D f(1, 4, 1.0);
    f(0, 0) = 0.5 / 255.0;
    f(0, 1) = 1.5 / 255.0;
    f(0, 2) = -3.0;
    f(0, 3) = 7.0;
    const auto e = encode_pgm(f);
    const auto* px = reinterpret_cast<const unsigned char*>(e.data() + e.size() - 4);
    CHECK(px[0] == 0);
    CHECK(px[1] == 2);
    CHECK(px[2] == 0);
    CHECK(px[3] == 255);
}

TEST_CASE("PGM round trip stays within half a grey level") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
        const Field2D f(r, c, oracle::random_vector(rng, r * c, -0.2, 1.2), 1.0);
        const auto back = parse_pgm(encode_pgm(f));
        REQUIRE(back.rows == r);
        REQUIRE(back.cols == c);
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double clamped = std::clamp(f.values[k], 0.0, 1.0);
            CHECK(std::abs(back.values[k] - clamped) <= 1.0 / 510.0 + 1e-15);
        }
    }
}

TEST_CASE("SVG plots") {
    PlotSpec spec;
    spec.title = "noisy & restored";
    std::vector<double> x(50), y(50);
    for (std::size_t k = 0; k < 50; ++k) {
        x[k] = std::sin(0.1 * static_cast<double>(k));
        y[k] = 0.9 * x[k];
    }
    spec.series = {{"noisy", "#d62728", x}, {"restored", "#1f77b4", y}};
    const auto svg = render_svg_plot(spec);
    CHECK(svg == render_svg_plot(spec));
    CHECK(count_of(svg, "<polyline") == 2);
    CHECK(svg.rfind("<svg", 200) != std::string::npos);
    CHECK(svg.find("noisy &amp; restored") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    PlotSpec flat;
    flat.series = {{"a", "#000000", std::vector<double>(10, 1.0)}, {"b", "#ff0000", std::vector<double>(10, 2.0)}};
    const auto ys = first_points_y(render_svg_plot(flat));
    REQUIRE(ys.size() == 2);
    CHECK(ys[0] != ys[1]);

    PlotSpec bad;
    bad.series = {{"a", "#000000", {1.0, 2.0}}, {"b", "#000000", {1.0, 2.0, 3.0}}};
    CHECK_THROWS_AS(render_svg_plot(bad), DimensionMismatch);
    bad.series = {{"a", "#000000", {1.0}}};
    CHECK_THROWS_AS(render_svg_plot(bad), InvalidSize);
}
