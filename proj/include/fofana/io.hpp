#pragma once

// Plain-text grid files:
//
//   # dim=<n>
//   # L=<half width>
//   # N=<points per axis>
//   # kind=exponent          (exponent fields only)
//   <N^n lines, one decimal sample each, row-major>
//
// Samples are written with 17 significant digits so a write/read cycle
// reproduces every double exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fofana/grid.hpp"

namespace fofana {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridFile {
    Box box;
    std::string kind;  // "function" or "exponent"
    std::vector<double> samples;
};

namespace detail {

inline std::string trim(std::string s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_sample(const std::string& tok, std::size_t line_no)
{
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        // from_chars accepts "nan"/"inf"; anything else unparsable is a format error.
        throw FormatError("malformed sample on line " + std::to_string(line_no) + ": '" + tok + "'");
    }
    if (!std::isfinite(v)) throw FormatError("non-finite sample on line " + std::to_string(line_no));
    return v;
}

} // namespace detail

inline GridFile parse_grid_file(std::istream& in)
{
    std::map<std::string, std::string> header;
    std::vector<double> samples;
    std::string line;
    std::size_t line_no = 0;
    bool in_body = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (in_body) throw FormatError("header line after samples on line " + std::to_string(line_no));
            std::string kv = detail::trim(t.substr(1));
            auto eq = kv.find('=');
            if (eq == std::string::npos) continue;  // free-form comment
            header[detail::trim(kv.substr(0, eq))] = detail::trim(kv.substr(eq + 1));
            continue;
        }
        in_body = true;
        samples.push_back(detail::parse_sample(t, line_no));
    }
    for (const char* key : {"dim", "L", "N"})
        if (!header.count(key)) throw FormatError(std::string("malformed header: missing ") + key);

    int dim = 0, n = 0;
    double half = 0.0;
    try {
        std::size_t pos = 0;
        dim = std::stoi(header["dim"], &pos);
        if (pos != header["dim"].size()) throw std::invalid_argument("dim");
        n = std::stoi(header["N"], &pos);
        if (pos != header["N"].size()) throw std::invalid_argument("N");
        half = std::stod(header["L"], &pos);
        if (pos != header["L"].size()) throw std::invalid_argument("L");
    } catch (const std::exception&) {
        throw FormatError("malformed header value");
    }
    std::optional<Box> box;
    try {
        box.emplace(dim, half, n);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("malformed header: ") + e.what());
    }
    if (samples.size() != box->cell_count())
        throw FormatError("dimension mismatch: header implies " + std::to_string(box->cell_count()) +
                          " samples, found " + std::to_string(samples.size()));
    std::string kind = header.count("kind") ? header["kind"] : "function";
    if (kind != "function" && kind != "exponent") throw FormatError("unknown kind '" + kind + "'");
    return GridFile{*box, kind, std::move(samples)};
}

inline GridFile read_grid_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_grid_file(in);
}

inline GridFunction read_function(const std::string& path)
{
    GridFile g = read_grid_file(path);
    if (g.kind != "function") throw FormatError(path + " holds an exponent field, not a function");
    return GridFunction(g.box, std::move(g.samples));
}

inline ExponentField read_exponent(const std::string& path)
{
    GridFile g = read_grid_file(path);
    // A function file is accepted as an exponent field when its values qualify.
    try {
        return ExponentField(g.box, std::move(g.samples));
    } catch (const std::invalid_argument& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_grid(std::ostream& out, const Box& box, std::span<const double> values, bool exponent)
{
    out << "# dim=" << box.dim() << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", box.half_width());
    out << "# L=" << buf << '\n';
    out << "# N=" << box.points_per_axis() << '\n';
    if (exponent) out << "# kind=exponent\n";
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << '\n';
    }
}

inline void write_function(const std::string& path, const GridFunction& f)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_grid(out, f.box(), f.samples(), false);
}

inline void write_exponent(const std::string& path, const ExponentField& p)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_grid(out, p.box(), p.values(), true);
}

} // namespace fofana
