#pragma once

// Test functions and exponent fields used by the suites: ball and cube
// indicators, tensor bumps (1 - |x - c|^2 / R^2)_+^2, and seeded random
// piecewise-constant fields.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fofana/grid.hpp"

namespace fofana::harness {

struct NamedFunction {
    std::string name;
    GridFunction f;
};

inline GridFunction bump(const Box& box, const Point& c, double radius, double height = 1.0)
{
    return GridFunction::from(box, [&](const Point& x) {
        double d2 = 0.0;
        for (int a = 0; a < box.dim(); ++a) d2 += (x[a] - c[a]) * (x[a] - c[a]);
        double u = 1.0 - d2 / (radius * radius);
        return u > 0.0 ? height * u * u : 0.0;
    });
}

/// log(max(|x|, h)): log|x| cut off at the cell scale.
inline GridFunction clamped_log(const Box& box, double scale = 1.0)
{
    const double h = box.spacing();
    return GridFunction::from(box, [&](const Point& x) {
        double s = 0.0;
        for (int a = 0; a < box.dim(); ++a) s += x[a] * x[a];
        return std::log(std::max(scale * std::sqrt(s), h));
    });
}

/// Piecewise-constant field on a `pieces`-per-axis partition of [-extent, extent]^n
/// with values uniform in [lo, hi]; zero outside that cube.
inline GridFunction random_piecewise(const Box& box, std::mt19937_64& rng, int pieces, double extent, double lo,
                                     double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::size_t total = 1;
    for (int a = 0; a < box.dim(); ++a) total *= static_cast<std::size_t>(pieces);
    std::vector<double> vals(total);
    for (double& v : vals) v = u(rng);
    return GridFunction::from(box, [&](const Point& x) {
        std::size_t k = 0;
        for (int a = 0; a < box.dim(); ++a) {
            double t = (x[a] + extent) / (2.0 * extent);
            if (t < 0.0 || t >= 1.0) return 0.0;
            k = k * pieces + static_cast<std::size_t>(t * pieces);
        }
        return vals[k];
    });
}

/// Exponent taking values in [lo, hi] per piece of [-L, L]^n, with the first
/// piece pinned to lo and the second to hi so that p_- = lo and p^+ = hi.
inline ExponentField random_piecewise_exponent(const Box& box, std::mt19937_64& rng, int pieces, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::size_t total = 1;
    for (int a = 0; a < box.dim(); ++a) total *= static_cast<std::size_t>(pieces);
    std::vector<double> vals(total);
    for (double& v : vals) v = u(rng);
    vals[0] = lo;
    if (total > 1) vals[1] = hi;
    const double L = box.half_width();
    return ExponentField::from(box, [&](const Point& x) {
        std::size_t k = 0;
        for (int a = 0; a < box.dim(); ++a) {
            double t = std::clamp((x[a] + L) / (2.0 * L), 0.0, std::nextafter(1.0, 0.0));
            k = k * pieces + static_cast<std::size_t>(t * pieces);
        }
        return vals[k];
    });
}

/// Smooth log-Hoelder exponent lo + (hi - lo) / (1 + |x|^2): equals hi at
/// the origin and decays to lo at infinity.
inline ExponentField smooth_exponent(const Box& box, double lo, double hi)
{
    return ExponentField::from(box, [&](const Point& x) {
        double s = 0.0;
        for (int a = 0; a < box.dim(); ++a) s += x[a] * x[a];
        return lo + (hi - lo) / (1.0 + s);
    });
}

/// The 20-function family: 5 ball indicators, 3 cube indicators, 7 bumps
/// (translated and dilated), 5 seeded random piecewise-constant fields.
inline std::vector<NamedFunction> standard_family(const Box& box, std::uint64_t seed)
{
    std::vector<NamedFunction> fam;
    const double L = box.half_width();
    auto pt = [&](double a0, double a1 = 0.0) {
        Point p{};
        p[0] = a0;
        if (box.dim() > 1) p[1] = a1;
        return p;
    };
    for (double r : {0.25, 0.5, 1.0, 2.0}) fam.push_back({"ball r=" + std::to_string(r), make_indicator(BallSpec{pt(0), r}, box)});
    fam.push_back({"ball off-centre", make_indicator(BallSpec{pt(0.3 * L, -0.2 * L), 0.6}, box)});
    for (double s : {0.5, 1.0, 2.0}) {
        CubeSpec q;
        q.side = s;
        fam.push_back({"cube s=" + std::to_string(s), make_indicator(q, box)});
    }
    for (double r : {0.3, 0.7, 1.5, 3.0}) fam.push_back({"bump R=" + std::to_string(r), bump(box, pt(0), r)});
    fam.push_back({"bump shifted", bump(box, pt(1.0, 0.5), 1.0)});
    fam.push_back({"bump pair", bump(box, pt(-1.5), 0.5) + bump(box, pt(1.5), 1.0, 0.5)});
    fam.push_back({"bump signed", bump(box, pt(-0.5), 0.8) - bump(box, pt(0.8), 0.6, 2.0)});
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 5; ++k)
        fam.push_back({"random pc " + std::to_string(k), random_piecewise(box, rng, 8 + 4 * k, 0.5 * L, -1.0, 1.0)});
    return fam;
}

} // namespace fofana::harness
