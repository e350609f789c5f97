#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lapden/grid.hpp"

namespace lapden {

/// Reads one decimal literal per line. Lines starting with '#' are comments; the first
/// comment may carry "h=<v> a=<v> b=<v>". Blank lines are ignored. Without a header h = 1, a = 0.
Signal1D read_csv_1d(const std::filesystem::path& path);
Signal1D parse_csv_1d(const std::string& text);

/// Writes the "# h= a= b=" header and shortest round-trip literals, one per line.
void write_csv_1d(const std::filesystem::path& path, const Signal1D& s);
std::string format_csv_1d(const Signal1D& s);

/// Reads P2 or P5 PGM with maxval <= 255 into [0, 1] (pixel / maxval). Rows are image rows.
Field2D read_pgm(const std::filesystem::path& path);
Field2D parse_pgm(const std::string& bytes);

/// Writes P5, maxval 255: clamp to [0, 1], scale by 255, round half to even.
void write_pgm(const std::filesystem::path& path, const Field2D& f);
std::string encode_pgm(const Field2D& f);

struct PlotSeries {
    std::string label;
    std::string color;  // "#rrggbb"
    std::vector<double> values;
};

struct PlotSpec {
    int width_px = 800;
    int height_px = 400;
    std::vector<PlotSeries> series;
    std::string title;
};

/// Standalone SVG 1.1 with one polyline per series. Byte-identical for identical input.
std::string render_svg_plot(const PlotSpec& spec);
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec);

/// Whole-file helpers; throw IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace lapden
