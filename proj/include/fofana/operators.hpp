#pragma once

// Dilation, argument scaling, the centered maximal function, the fractional
// integral and its commutator with multiplication by b.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fofana/grid.hpp"
#include "fofana/parallel.hpp"
#include "fofana/spaces.hpp"

namespace fofana {

/// St_r^{(alpha)} f = r^{-n/alpha} f(. / r).
struct DilationParams {
    double r = 1.0;
    double alpha = 1.0;  // kInfinity allowed: no amplitude factor

    DilationParams(double r_, double alpha_) : r(r_), alpha(alpha_)
    {
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("dilation factor must be positive");
        if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
    }

    double amplitude(int dim) const { return std::pow(r, -dim * reciprocal(alpha)); }
};

/// Multilinear interpolation of the cell samples at x; cells outside the box
/// read as 0. Weights within 1e-9 of 0 or 1 are snapped so that points on
/// (or numerically next to) cell centers return the sample itself.
inline double sample_linear(const GridFunction& f, const Point& x)
{
    const Box& box = f.box();
    const int d = box.dim();
    const long n = box.points_per_axis();
    std::array<long, kMaxDim> base{};
    std::array<double, kMaxDim> w{};
    for (int a = 0; a < d; ++a) {
        double s = box.lattice_pos(x[a]);
        double fl = std::floor(s);
        double t = s - fl;
        if (t < 1e-9) {
            t = 0.0;
        } else if (t > 1.0 - 1e-9) {
            t = 0.0;
            fl += 1.0;
        }
        if (fl < -2.0 || fl > double(n) + 1.0) return 0.0;
        base[a] = static_cast<long>(fl);
        w[a] = t;
    }
    double acc = 0.0;
    const int corners = 1 << d;
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        std::array<int, kMaxDim> idx{};
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            const bool up = (c >> a) & 1;
            const double wa = up ? w[a] : 1.0 - w[a];
            if (wa == 0.0) {
                weight = 0.0;
                break;
            }
            weight *= wa;
            const long i = base[a] + (up ? 1 : 0);
            if (i < 0 || i >= n) inside = false;
            idx[a] = static_cast<int>(i);
        }
        if (weight == 0.0 || !inside) continue;
        acc += weight * f[box.flatten(idx)];
    }
    return acc;
}

/// Value of f at an arbitrary point by multilinear interpolation.
inline double point_value(const GridFunction& f, const Point& x) { return sample_linear(f, x); }

/// St_r^{(alpha)} f resampled on the same box by linear interpolation at x / r.
inline GridFunction dilate(const GridFunction& f, const DilationParams& d)
{
    if (d.r == 1.0) return f;
    const Box& box = f.box();
    const double amp = d.amplitude(box.dim());
    std::vector<double> out(box.cell_count());
    parallel_for(out.size(), [&](std::size_t i) {
        Point x = box.center(i);
        for (int a = 0; a < box.dim(); ++a) x[a] /= d.r;
        out[i] = amp * sample_linear(f, x);
    });
    return GridFunction(box, std::move(out));
}

/// St_r^{(alpha)} f represented exactly: the same samples scaled by
/// r^{-n/alpha} on the box [-rL, rL]^n with the same N.
inline GridFunction dilate_rescaled(const GridFunction& f, const DilationParams& d)
{
    const Box& b = f.box();
    Box nb(b.dim(), b.half_width() * d.r, b.points_per_axis());
    std::vector<double> s(f.samples().begin(), f.samples().end());
    const double amp = d.amplitude(b.dim());
    for (double& v : s) v *= amp;
    return GridFunction(nb, std::move(s));
}

/// delta_t f = f(t .) by linear interpolation on the same box.
inline GridFunction scale_argument(const GridFunction& f, double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("scale factor must be positive");
    if (t == 1.0) return f;
    const Box& box = f.box();
    std::vector<double> out(box.cell_count());
    parallel_for(out.size(), [&](std::size_t i) {
        Point x = box.center(i);
        for (int a = 0; a < box.dim(); ++a) x[a] *= t;
        out[i] = sample_linear(f, x);
    });
    return GridFunction(box, std::move(out));
}

namespace detail {

// Number of lattice points (inside or outside the box) in B(center, r).
inline std::size_t lattice_ball_count(const Box& box, const Point& center, double r)
{
    const int d = box.dim();
    auto [lo0, hi0] = axis_range(box, center[0], r);
    if (d == 1) return static_cast<std::size_t>(std::max(0L, hi0 - lo0));
    std::size_t count = 0;
    const double r2 = r * r;
    auto last = [&](double used2) -> std::size_t {
        double rem = r2 - used2;
        if (rem <= 0.0) return 0;
        auto [lo, hi] = axis_range(box, center[d - 1], std::sqrt(rem) * (1 + 1e-12));
        auto in = [&](long i) {
            double t = box.coord(i) - center[d - 1];
            return inside_radius(used2 + t * t, r);
        };
        while (lo < hi && !in(lo)) ++lo;
        while (hi > lo && !in(hi - 1)) --hi;
        return static_cast<std::size_t>(std::max(0L, hi - lo));
    };
    for (long i0 = lo0; i0 < hi0; ++i0) {
        double t0 = box.coord(i0) - center[0];
        if (d == 2) {
            count += last(t0 * t0);
            continue;
        }
        double rem0 = r2 - t0 * t0;
        if (rem0 <= 0.0) continue;
        auto [lo1, hi1] = axis_range(box, center[1], std::sqrt(rem0) * (1 + 1e-12));
        for (long i1 = lo1; i1 < hi1; ++i1) {
            double t1 = box.coord(i1) - center[1];
            count += last(t0 * t0 + t1 * t1);
        }
    }
    return count;
}

} // namespace detail

/// (Mf)(x) = max over r in rg of the mean of |f| over B(x, r), at every cell
/// center. |B| is the number of lattice cells in the ball times h^n, counting
/// cells outside the box (where f vanishes).
inline GridFunction maximal_function(const GridFunction& f, const RGrid& rg)
{
    const Box& box = f.box();
    std::vector<double> prefix(f.size() + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) prefix[i + 1] = prefix[i] + std::abs(f[i]);
    std::vector<double> out(f.size(), 0.0);
    parallel_for(out.size(), [&](std::size_t i) {
        const Point x = box.center(i);
        double best = 0.0;
        for (double r : rg.values()) {
            double s = 0.0;
            for_each_ball_run(box, x, r, [&](std::size_t first, std::size_t count) {
                s += prefix[first + count] - prefix[first];
            });
            std::size_t cnt = detail::lattice_ball_count(box, x, r);
            if (cnt == 0) continue;
            best = std::max(best, std::max(0.0, s) / static_cast<double>(cnt));
        }
        out[i] = best;
    });
    return GridFunction(box, std::move(out));
}

enum class DiagonalRule { exclude_self_cell, cell_average };

struct KernelPlan {
    double gamma = 0.5;
    DiagonalRule diagonal_rule = DiagonalRule::cell_average;

    explicit KernelPlan(double g, DiagonalRule rule = DiagonalRule::cell_average) : gamma(g), diagonal_rule(rule)
    {
        if (!(gamma > 0.0)) throw std::invalid_argument("gamma out of range: need 0 < gamma < n");
    }
};

namespace detail {

// 16-point Gauss-Legendre nodes and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kGaussNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// Integral of |y|^{gamma - n} over the cell [-a, a]^n, a = h/2. The integrand
// is homogeneous of degree gamma - n, so the divergence theorem reduces it to
// (2 n a / gamma) times the integral of (|u|^2 + a^2)^{(gamma-n)/2} over one
// face [-a, a]^{n-1}, which is smooth and integrated by Gauss-Legendre.
inline double self_cell_integral(int dim, double gamma, double h)
{
    const double a = 0.5 * h;
    const double e = 0.5 * (gamma - dim);
    double face = 0.0;
    if (dim == 1) {
        face = std::pow(a * a, e);
    } else if (dim == 2) {
        for (int k = 0; k < 8; ++k) {
            double u = a * kGaussNodes[k];
            face += 2.0 * kGaussWeights[k] * std::pow(u * u + a * a, e);
        }
        face *= a;
    } else {
        for (int k = 0; k < 8; ++k)
            for (int l = 0; l < 8; ++l) {
                double u = a * kGaussNodes[k], v = a * kGaussNodes[l];
                face += 4.0 * kGaussWeights[k] * kGaussWeights[l] * std::pow(u * u + v * v + a * a, e);
            }
        face *= a * a;
    }
    return 2.0 * dim * a / gamma * face;
}

// Weights K[offset] = h^n |offset h|^{gamma-n} on the (2N-1)^n offset lattice,
// with the diagonal per rule.
inline std::vector<double> kernel_table(const Box& box, const KernelPlan& kp)
{
    const int d = box.dim();
    const long n = box.points_per_axis();
    const long w = 2 * n - 1;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(w);
    std::vector<double> k(total);
    const double h = box.spacing();
    const double hn = box.cell_measure();
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t rem = t;
        double d2 = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            long off = static_cast<long>(rem % w) - (n - 1);
            rem /= w;
            d2 += double(off) * double(off);
        }
        k[t] = d2 == 0.0 ? 0.0 : hn * std::pow(d2 * h * h, 0.5 * (kp.gamma - d));
    }
    const std::size_t zero = (total - 1) / 2;
    if (kp.diagonal_rule == DiagonalRule::cell_average) k[zero] = self_cell_integral(d, kp.gamma, h);
    return k;
}

} // namespace detail

/// Dense kernel work N^{2n} beyond which frac_integral refuses to run.
inline constexpr double kMaxKernelWork = 4294967296.0;  // 2^32

/// (I_gamma f)(x_i) = sum_j K(x_i - x_j) f(x_j) with K(y) = h^n |y|^{gamma-n}
/// off the diagonal.
inline GridFunction frac_integral(const GridFunction& f, const KernelPlan& kp)
{
    const Box& box = f.box();
    const int d = box.dim();
    if (!(kp.gamma > 0.0 && kp.gamma < d)) throw std::invalid_argument("gamma out of range: need 0 < gamma < n");
    const long n = box.points_per_axis();
    if (std::pow(double(n), 2.0 * d) > kMaxKernelWork)
        throw std::invalid_argument("grid too large for the dense fractional integral");
    const auto k = detail::kernel_table(box, kp);
    const long w = 2 * n - 1;

    // Nonzero samples with their offset-table base index, so the inner loop
    // is a single subtraction per term.
    struct Source {
        std::size_t base;
        double value;
    };
    auto offset_index = [&](const std::array<int, kMaxDim>& idx) {
        std::size_t t = 0;
        for (int a = 0; a < d; ++a) t = t * w + static_cast<std::size_t>(idx[a]);
        return t;
    };
    std::vector<Source> support;
    for (std::size_t j = 0; j < f.size(); ++j)
        if (f[j] != 0.0) support.push_back({offset_index(box.unflatten(j)), f[j]});

    // index of (ii - jj + (N-1)) = offset_index(ii) + centre - offset_index(jj)
    std::size_t centre = 0;
    for (int a = 0; a < d; ++a) centre = centre * w + static_cast<std::size_t>(n - 1);

    std::vector<double> out(f.size(), 0.0);
    parallel_for(out.size(), [&](std::size_t i) {
        const std::size_t ti = offset_index(box.unflatten(i)) + centre;
        double s = 0.0;
        for (const Source& src : support) s += k[ti - src.base] * src.value;
        out[i] = s;
    });
    return GridFunction(box, std::move(out));
}

/// [b, I_gamma] f = b I_gamma f - I_gamma (b f).
inline GridFunction commutator(const GridFunction& b, const GridFunction& f, const KernelPlan& kp)
{
    require_same_box(b.box(), f.box());
    GridFunction lhs = b * frac_integral(f, kp);
    GridFunction rhs = frac_integral(b * f, kp);
    return lhs - rhs;
}

} // namespace fofana
