#include "lapden/data_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "lapden/error.hpp"

namespace lapden {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size() && std::isfinite(out);
}

std::string shortest(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string fixed2(double v) {
    std::array<char, 48> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.2f", v);
    std::string s(buf.data(), static_cast<std::size_t>(len));
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Whitespace-separated PGM header tokenizer that skips '#' comments.
class PgmCursor {
public:
    explicit PgmCursor(const std::string& bytes) : data_(bytes) {}

    std::string_view token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) && data_[pos_] != '#') {
            ++pos_;
        }
        return std::string_view(data_).substr(start, pos_ - start);
    }

    unsigned long number(const char* what) {
        const auto t = token();
        unsigned long v = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
            throw FormatError(std::string("PGM: missing or malformed ") + what);
        }
        return v;
    }

    // Consumes the single whitespace byte that ends a binary header.
    void end_header() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            throw FormatError("PGM: header not terminated by whitespace");
        }
        ++pos_;
    }

    [[nodiscard]] std::size_t pos() const noexcept { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& data_;
    std::size_t pos_ = 0;
};

void parse_header_comment(std::string_view line, double& h, double& a, std::optional<double>& b, std::size_t lineno) {
    std::istringstream in{std::string(line.substr(1))};
    std::string item;
    while (in >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) return;  // ordinary comment
        const std::string key = item.substr(0, eq);
        double v = 0.0;
        if (key != "h" && key != "a" && key != "b") return;
        if (!parse_double(std::string_view(item).substr(eq + 1), v)) {
            throw ParseError(lineno, "malformed header value '" + item + "'");
        }
        if (key == "h") {
            if (!(v > 0.0)) throw ParseError(lineno, "header spacing h must be positive");
            h = v;
        } else if (key == "a") {
            a = v;
        } else {
            b = v;
        }
    }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Signal1D parse_csv_1d(const std::string& text) {
    std::vector<double> values;
    double h = 1.0, a = 0.0;
    std::optional<double> b;
    bool header_seen = false;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        ++lineno;
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (!header_seen) parse_header_comment(line, h, a, b, lineno);
            header_seen = true;
            continue;
        }
        double v = 0.0;
        if (!parse_double(line, v)) throw ParseError(lineno, "malformed number '" + std::string(line) + "'");
        values.push_back(v);
    }
    if (values.empty()) throw EmptyInput("CSV input contains no values");
    Signal1D s(std::move(values), h, a);
    if (b) s.b = *b;
    return s;
}

Signal1D read_csv_1d(const std::filesystem::path& path) { return parse_csv_1d(read_file(path)); }

std::string format_csv_1d(const Signal1D& s) {
    std::string out = "# h=" + shortest(s.h) + " a=" + shortest(s.a) + " b=" + shortest(s.b) + "\n";
    for (double v : s.values) {
        out += shortest(v);
        out += '\n';
    }
    return out;
}

void write_csv_1d(const std::filesystem::path& path, const Signal1D& s) { write_file(path, format_csv_1d(s)); }

Field2D parse_pgm(const std::string& bytes) {
    PgmCursor cur(bytes);
    const auto magic = cur.token();
    if (magic != "P2" && magic != "P5") {
        throw FormatError("PGM: bad magic number '" + std::string(magic) + "' (expected P2 or P5)");
    }
    const bool binary = magic == "P5";
    const unsigned long width = cur.number("width");
    const unsigned long height = cur.number("height");
    const unsigned long maxval = cur.number("maxval");
    if (width == 0 || height == 0) throw FormatError("PGM: zero image dimension");
    if (maxval == 0 || maxval > 255) {
        throw FormatError("PGM: maxval " + std::to_string(maxval) + " outside 1..255");
    }
    const std::size_t count = width * height;
    Field2D f(height, width, 1.0);
    const double scale = static_cast<double>(maxval);
    if (binary) {
        cur.end_header();
        if (bytes.size() - cur.pos() < count) {
            throw FormatError("PGM: truncated raster, expected " + std::to_string(count) + " bytes, found " +
                              std::to_string(bytes.size() - cur.pos()));
        }
        for (std::size_t k = 0; k < count; ++k) {
            const auto v = static_cast<unsigned char>(bytes[cur.pos() + k]);
            if (v > maxval) throw FormatError("PGM: pixel value exceeds maxval");
            f.values[k] = static_cast<double>(v) / scale;
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            const auto t = cur.token();
            if (t.empty()) {
                throw FormatError("PGM: truncated raster, expected " + std::to_string(count) + " samples, found " +
                                  std::to_string(k));
            }
            unsigned long v = 0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc{} || ptr != t.data() + t.size()) {
                throw FormatError("PGM: malformed pixel value '" + std::string(t) + "'");
            }
            if (v > maxval) throw FormatError("PGM: pixel value exceeds maxval");
            f.values[k] = static_cast<double>(v) / scale;
        }
    }
    return f;
}

Field2D read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

std::string encode_pgm(const Field2D& f) {
    if (f.rows == 0 || f.cols == 0) throw InvalidSize("PGM: empty field");
    std::string out = "P5\n" + std::to_string(f.cols) + " " + std::to_string(f.rows) + "\n255\n";
    out.reserve(out.size() + f.size());
    for (double v : f.values) {
        if (!std::isfinite(v)) throw InvalidParameter("PGM: cannot encode a non-finite value");
        const double q = std::nearbyint(std::clamp(v, 0.0, 1.0) * 255.0);
        out += static_cast<char>(static_cast<unsigned char>(q));
    }
    return out;
}

void write_pgm(const std::filesystem::path& path, const Field2D& f) { write_file(path, encode_pgm(f)); }

std::string render_svg_plot(const PlotSpec& spec) {
    if (spec.series.empty()) throw InvalidParameter("plot needs at least one series");
    if (spec.width_px <= 0 || spec.height_px <= 0) throw InvalidParameter("plot size must be positive");
    const std::size_t n = spec.series.front().values.size();
    if (n < 2) throw InvalidSize("plot series need at least 2 points");
    double lo = spec.series.front().values.front();
    double hi = lo;
    for (const auto& s : spec.series) {
        if (s.values.size() != n) throw DimensionMismatch("plot series differ in length");
        for (double v : s.values) {
            if (!std::isfinite(v)) throw InvalidParameter("plot values must be finite");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double w = spec.width_px, hgt = spec.height_px;
    const double mx = 0.05 * w, my = 0.05 * hgt;
    const double sx = (w - 2.0 * mx) / static_cast<double>(n - 1);
    const double sy = (hgt - 2.0 * my) / (hi - lo);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width_px) +
           "\" height=\"" + std::to_string(spec.height_px) + "\" viewBox=\"0 0 " + std::to_string(spec.width_px) +
           " " + std::to_string(spec.height_px) + "\">\n";
    out += "<title>" + xml_escape(spec.title) + "</title>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width_px) + "\" height=\"" +
           std::to_string(spec.height_px) + "\" fill=\"#ffffff\"/>\n";
    out += "<rect x=\"" + fixed2(mx) + "\" y=\"" + fixed2(my) + "\" width=\"" + fixed2(w - 2 * mx) +
           "\" height=\"" + fixed2(hgt - 2 * my) + "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (const auto& s : spec.series) {
        out += "<polyline fill=\"none\" stroke=\"" + xml_escape(s.color) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) out += ' ';
            out += fixed2(mx + sx * static_cast<double>(k));
            out += ',';
            out += fixed2(hgt - my - sy * (s.values[k] - lo));
        }
        out += "\"><title>" + xml_escape(s.label) + "</title></polyline>\n";
    }
    double legend_y = my + 14.0;
    for (const auto& s : spec.series) {
        out += "<text x=\"" + fixed2(mx + 8.0) + "\" y=\"" + fixed2(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + xml_escape(s.color) + "\">" +
               xml_escape(s.label) + "</text>\n";
        legend_y += 14.0;
    }
    out += "<text x=\"" + fixed2(w / 2.0) + "\" y=\"" + fixed2(my - 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + xml_escape(spec.title) +
           "</text>\n";
    out += "</svg>\n";
    return out;
}

void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec) {
    write_file(path, render_svg_plot(spec));
}

}  // namespace lapden
