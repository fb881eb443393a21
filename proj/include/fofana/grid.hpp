#pragma once

// Discretization substrate: a uniform cell-centered grid over the box
// [-L, L]^n, sampled functions and exponent fields on it, and the ball and
// cube geometry used by every norm in the library.
//
// Conventions used everywhere:
//   * cell i along an axis has center -L + (i + 1/2) h with h = 2L/N;
//   * flat indices are row-major (axis 0 slowest);
//   * integrals use the midpoint rule, h^n times the sum of samples;
//   * a cell belongs to a ball or cube iff its center does;
//   * functions vanish identically outside the box.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fofana {

inline constexpr int kMaxDim = 3;

using Point = std::array<double, kMaxDim>;

class Box {
public:
    Box(int dim, double half_width, int points_per_axis)
        : dim_(dim), half_width_(half_width), n_(points_per_axis)
    {
        if (dim < 1 || dim > kMaxDim)
            throw std::invalid_argument("box dimension must be 1, 2 or 3");
        if (!(half_width > 0.0) || !std::isfinite(half_width))
            throw std::invalid_argument("box half width must be positive");
        if (points_per_axis < 8)
            throw std::invalid_argument("box needs at least 8 points per axis");
        h_ = 2.0 * half_width_ / n_;
        cells_ = 1;
        for (int a = 0; a < dim_; ++a) cells_ *= static_cast<std::size_t>(n_);
    }

    int dim() const { return dim_; }
    double half_width() const { return half_width_; }
    int points_per_axis() const { return n_; }
    double spacing() const { return h_; }
    std::size_t cell_count() const { return cells_; }
    double cell_measure() const { return std::pow(h_, dim_); }

    // Center coordinate of (possibly out-of-range) lattice index i.
    double coord(long i) const { return -half_width_ + (static_cast<double>(i) + 0.5) * h_; }

    // Fractional lattice position of x: coord(i) == x  <=>  lattice_pos(x) == i.
    double lattice_pos(double x) const { return (x + half_width_) / h_ - 0.5; }

    std::array<int, kMaxDim> unflatten(std::size_t flat) const
    {
        std::array<int, kMaxDim> idx{};
        for (int a = dim_ - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
            flat /= static_cast<std::size_t>(n_);
        }
        return idx;
    }

    std::size_t flatten(const std::array<int, kMaxDim>& idx) const
    {
        std::size_t flat = 0;
        for (int a = 0; a < dim_; ++a) flat = flat * static_cast<std::size_t>(n_) + idx[a];
        return flat;
    }

    Point center(std::size_t flat) const
    {
        Point x{};
        auto idx = unflatten(flat);
        for (int a = 0; a < dim_; ++a) x[a] = coord(idx[a]);
        return x;
    }

    friend bool operator==(const Box& a, const Box& b)
    {
        return a.dim_ == b.dim_ && a.n_ == b.n_ && a.half_width_ == b.half_width_;
    }

private:
    int dim_;
    double half_width_;
    int n_;
    double h_ = 0.0;
    std::size_t cells_ = 0;
};

inline void require_same_box(const Box& a, const Box& b)
{
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

/// Real samples on the cells of a box; zero outside the box.
class GridFunction {
public:
    explicit GridFunction(Box box) : box_(box), samples_(box.cell_count(), 0.0) {}

    GridFunction(Box box, std::vector<double> samples) : box_(box), samples_(std::move(samples))
    {
        if (samples_.size() != box_.cell_count())
            throw std::invalid_argument("sample count does not match the grid");
        for (double v : samples_)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample");
    }

    template <class Fn>
    static GridFunction from(const Box& box, Fn&& fn)
    {
        std::vector<double> s(box.cell_count());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = fn(box.center(i));
        return GridFunction(box, std::move(s));
    }

    const Box& box() const { return box_; }
    std::size_t size() const { return samples_.size(); }
    std::span<const double> samples() const { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }

    bool is_zero() const
    {
        return std::all_of(samples_.begin(), samples_.end(), [](double v) { return v == 0.0; });
    }

    double max_abs() const
    {
        double m = 0.0;
        for (double v : samples_) m = std::max(m, std::abs(v));
        return m;
    }

    GridFunction& operator+=(const GridFunction& o)
    {
        require_same_box(box_, o.box_);
        for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o)
    {
        require_same_box(box_, o.box_);
        for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
        return *this;
    }
    GridFunction& operator*=(double c)
    {
        for (double& v : samples_) v *= c;
        return *this;
    }

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

    // Pointwise product.
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b)
    {
        require_same_box(a.box_, b.box_);
        GridFunction out(a.box_);
        for (std::size_t i = 0; i < a.size(); ++i) out.samples_[i] = a.samples_[i] * b.samples_[i];
        return out;
    }

    GridFunction abs() const
    {
        GridFunction out(*this);
        for (double& v : out.samples_) v = std::abs(v);
        return out;
    }

private:
    Box box_;
    std::vector<double> samples_;
};

/// Variable exponent p(.) with 1 < p_- <= p <= p^+ < infinity.
class ExponentField {
public:
    ExponentField(Box box, std::vector<double> values) : box_(box), values_(std::move(values))
    {
        if (values_.size() != box_.cell_count())
            throw std::invalid_argument("exponent count does not match the grid");
        p_minus_ = std::numeric_limits<double>::infinity();
        p_plus_ = -p_minus_;
        for (double v : values_) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite exponent");
            p_minus_ = std::min(p_minus_, v);
            p_plus_ = std::max(p_plus_, v);
        }
        if (!(p_minus_ > 1.0)) throw std::invalid_argument("exponent must exceed 1 everywhere");
    }

    static ExponentField constant(const Box& box, double p)
    {
        return ExponentField(box, std::vector<double>(box.cell_count(), p));
    }

    template <class Fn>
    static ExponentField from(const Box& box, Fn&& fn)
    {
        std::vector<double> v(box.cell_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(box.center(i));
        return ExponentField(box, std::move(v));
    }

    const Box& box() const { return box_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }
    bool is_constant() const { return p_minus_ == p_plus_; }

    // Exponent at an arbitrary point: value of the nearest cell, with the
    // field extended outside the box by its boundary values.
    double at(const Point& x) const
    {
        std::array<int, kMaxDim> idx{};
        const int n = box_.points_per_axis();
        for (int a = 0; a < box_.dim(); ++a) {
            long i = std::lround(box_.lattice_pos(x[a]));
            idx[a] = static_cast<int>(std::clamp<long>(i, 0, n - 1));
        }
        return values_[box_.flatten(idx)];
    }

private:
    Box box_;
    std::vector<double> values_;
    double p_minus_ = 0.0;
    double p_plus_ = 0.0;
};

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int dim)
{
    return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

/// Continuum measure |B(x,r)| = v_n r^n.
inline double ball_volume(int dim, double r) { return unit_ball_volume(dim) * std::pow(r, dim); }

struct BallSpec {
    Point center{};
    double radius = 1.0;
};

/// Q_{r,k} = r (k + [0,1)^n).
struct CubeSpec {
    std::array<long, kMaxDim> index{};
    double side = 1.0;
};

namespace detail {

// Open-ball predicate on squared distance. The relative shave makes a
// neighbour at distance exactly r fall outside regardless of rounding.
inline bool inside_radius(double dist2, double r) { return dist2 < r * r * (1.0 - 1e-10); }

inline long cube_coordinate(double x, double side) { return static_cast<long>(std::floor(x / side)); }

// Calls fn(i_lo, i_hi) with the half-open range of lattice indices (possibly
// outside [0, N)) whose centers satisfy |coord(i) - c| < half_len.
inline std::pair<long, long> axis_range(const Box& box, double c, double half_len)
{
    if (!(half_len > 0.0)) return {0, 0};
    long lo = static_cast<long>(std::ceil(box.lattice_pos(c - half_len))) - 1;
    long hi = static_cast<long>(std::floor(box.lattice_pos(c + half_len))) + 2;
    auto in = [&](long i) {
        double d = box.coord(i) - c;
        return inside_radius(d * d, half_len);
    };
    while (lo < hi && !in(lo)) ++lo;
    while (hi > lo && !in(hi - 1)) --hi;
    return {lo, hi};
}

} // namespace detail

/// Visits the cells of B(center, r) clipped to the box as contiguous runs of
/// flat indices: fn(first_flat, count). Runs follow the last axis.
template <class Fn>
void for_each_ball_run(const Box& box, const Point& center, double r, Fn&& fn)
{
    const int n = box.points_per_axis();
    const int d = box.dim();
    const double r2 = r * r;
    auto clip = [n](std::pair<long, long> p) {
        return std::pair<long, long>{std::max(p.first, 0L), std::min(p.second, static_cast<long>(n))};
    };
    if (d == 1) {
        auto [lo, hi] = clip(detail::axis_range(box, center[0], r));
        if (hi > lo) fn(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo));
        return;
    }
    std::array<int, kMaxDim> idx{};
    auto last_axis = [&](double used2) {
        double rem = r2 - used2;
        if (rem <= 0.0) return;
        // Exact membership is decided on the full squared distance below.
        auto [lo, hi] = clip(detail::axis_range(box, center[d - 1], std::sqrt(rem) * (1 + 1e-12)));
        auto in = [&](long i) {
            double t = box.coord(i) - center[d - 1];
            return detail::inside_radius(used2 + t * t, r);
        };
        while (lo < hi && !in(lo)) ++lo;
        while (hi > lo && !in(hi - 1)) --hi;
        if (hi <= lo) return;
        idx[d - 1] = static_cast<int>(lo);
        fn(box.flatten(idx), static_cast<std::size_t>(hi - lo));
    };
    auto [lo0, hi0] = clip(detail::axis_range(box, center[0], r));
    for (long i0 = lo0; i0 < hi0; ++i0) {
        idx[0] = static_cast<int>(i0);
        double t0 = box.coord(i0) - center[0];
        if (d == 2) {
            last_axis(t0 * t0);
            continue;
        }
        double rem0 = r2 - t0 * t0;
        if (rem0 <= 0.0) continue;
        auto [lo1, hi1] = clip(detail::axis_range(box, center[1], std::sqrt(rem0) * (1 + 1e-12)));
        for (long i1 = lo1; i1 < hi1; ++i1) {
            idx[1] = static_cast<int>(i1);
            double t1 = box.coord(i1) - center[1];
            last_axis(t0 * t0 + t1 * t1);
        }
    }
}

/// Per-axis partition of [0, N) into runs of cells lying in the same cube
/// coordinate floor(x / side). Returned as (cube coordinate, first, count).
struct AxisRun {
    long cube;
    int first;
    int count;
};

inline std::vector<AxisRun> cube_runs(const Box& box, double side)
{
    std::vector<AxisRun> runs;
    const int n = box.points_per_axis();
    for (int i = 0; i < n; ++i) {
        long k = detail::cube_coordinate(box.coord(i), side);
        if (!runs.empty() && runs.back().cube == k)
            ++runs.back().count;
        else
            runs.push_back({k, i, 1});
    }
    return runs;
}

/// Visits every cube Q_{side,k} meeting the box. For each cube calls
/// fn(cube_index, runs) where runs is a list of (first_flat, count) pairs.
template <class Fn>
void for_each_cube(const Box& box, double side, Fn&& fn)
{
    const auto runs = cube_runs(box, side);
    const int d = box.dim();
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::array<int, kMaxDim> idx{};
    std::array<long, kMaxDim> k{};
    // Iterate cube products; for each, collect spans across leading axes.
    std::array<std::size_t, kMaxDim> which{};
    const std::size_t nr = runs.size();
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= nr;
    for (std::size_t c = 0; c < total; ++c) {
        std::size_t rem = c;
        for (int a = d - 1; a >= 0; --a) {
            which[a] = rem % nr;
            rem /= nr;
            k[a] = runs[which[a]].cube;
        }
        spans.clear();
        const AxisRun& last = runs[which[d - 1]];
        if (d == 1) {
            spans.emplace_back(static_cast<std::size_t>(last.first), static_cast<std::size_t>(last.count));
        } else if (d == 2) {
            const AxisRun& r0 = runs[which[0]];
            for (int i0 = r0.first; i0 < r0.first + r0.count; ++i0) {
                idx[0] = i0;
                idx[1] = last.first;
                spans.emplace_back(box.flatten(idx), static_cast<std::size_t>(last.count));
            }
        } else {
            const AxisRun& r0 = runs[which[0]];
            const AxisRun& r1 = runs[which[1]];
            for (int i0 = r0.first; i0 < r0.first + r0.count; ++i0)
                for (int i1 = r1.first; i1 < r1.first + r1.count; ++i1) {
                    idx[0] = i0;
                    idx[1] = i1;
                    idx[2] = last.first;
                    spans.emplace_back(box.flatten(idx), static_cast<std::size_t>(last.count));
                }
        }
        fn(k, std::span<const std::pair<std::size_t, std::size_t>>(spans));
    }
}

/// Pairwise summation with a fixed leaf size, so the result depends only on
/// the input order.
inline double pairwise_sum(std::span<const double> v)
{
    constexpr std::size_t kLeaf = 64;
    if (v.size() <= kLeaf) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double integrate(const GridFunction& f) { return f.box().cell_measure() * pairwise_sum(f.samples()); }

inline bool contains(const BallSpec& b, const Box& box, const Point& x)
{
    double d2 = 0.0;
    for (int a = 0; a < box.dim(); ++a) d2 += (x[a] - b.center[a]) * (x[a] - b.center[a]);
    return detail::inside_radius(d2, b.radius);
}

inline bool contains(const CubeSpec& q, const Box& box, const Point& x)
{
    for (int a = 0; a < box.dim(); ++a)
        if (detail::cube_coordinate(x[a], q.side) != q.index[a]) return false;
    return true;
}

/// chi_region sampled on the box; throws if no cell center lies in the region.
template <class Region>
GridFunction make_indicator(const Region& region, const Box& box)
{
    std::vector<double> s(box.cell_count(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (contains(region, box, box.center(i))) {
            s[i] = 1.0;
            any = true;
        }
    if (!any) throw std::invalid_argument("region outside domain");
    return GridFunction(box, std::move(s));
}

} // namespace fofana
