#pragma once

// Amalgam and Fofana norms (ball-based and cube-based forms), the BMO
// seminorm, and the embedding / nontriviality diagnostics built on them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fofana/grid.hpp"
#include "fofana/parallel.hpp"
#include "fofana/varnorm.hpp"

namespace fofana {

/// Sentinel for q = infinity or alpha = infinity.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline double reciprocal(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

/// Hoelder conjugate on [1, infinity] with 1' = infinity and infinity' = 1.
inline double conjugate_index(double q)
{
    if (q == 1.0) return kInfinity;
    if (std::isinf(q)) return 1.0;
    return q / (q - 1.0);
}

enum class Triviality {
    nontrivial,           // p^+ <= alpha <= q
    alpha_above_q,        // blows up as r -> 0
    alpha_below_p_minus,  // blows up as r -> infinity
    alpha_inside_p_range, // p_- <= alpha < p^+: excluded, no blow-up rate known
};

inline const char* to_string(Triviality t)
{
    switch (t) {
    case Triviality::nontrivial: return "nontrivial";
    case Triviality::alpha_above_q: return "trivial: alpha > q";
    case Triviality::alpha_below_p_minus: return "trivial: alpha < p_-";
    case Triviality::alpha_inside_p_range: return "trivial: p_- <= alpha < p^+";
    }
    return "?";
}

/// Parameters (p(.), q, alpha) of a Fofana space.
class SpaceParams {
public:
    SpaceParams(ExponentField p, double q, double alpha) : p_(std::move(p)), q_(q), alpha_(alpha)
    {
        if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
        if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
    }

    const ExponentField& p() const { return p_; }
    double q() const { return q_; }
    double alpha() const { return alpha_; }
    double q_conj() const { return conjugate_index(q_); }
    double alpha_conj() const { return conjugate_index(alpha_); }

    Triviality triviality() const
    {
        if (alpha_ > q_) return Triviality::alpha_above_q;
        if (alpha_ < p_.p_minus()) return Triviality::alpha_below_p_minus;
        if (alpha_ < p_.p_plus()) return Triviality::alpha_inside_p_range;
        return Triviality::nontrivial;
    }
    bool nontrivial() const { return triviality() == Triviality::nontrivial; }

    /// (p'(.), q', alpha'), the parameters of the pre-dual.
    SpaceParams dual() const { return SpaceParams(conjugate(p_), q_conj(), alpha_conj()); }

private:
    ExponentField p_;
    double q_;
    double alpha_;
};

/// Finite set of radii standing in for sup over r > 0.
class RGrid {
public:
    explicit RGrid(std::vector<double> r) : r_(std::move(r))
    {
        if (r_.empty()) throw std::invalid_argument("radius grid is empty");
        for (std::size_t i = 0; i < r_.size(); ++i) {
            if (!(r_[i] > 0.0) || !std::isfinite(r_[i])) throw std::invalid_argument("radii must be positive");
            if (i > 0 && !(r_[i] > r_[i - 1])) throw std::invalid_argument("radii must be strictly increasing");
        }
    }

    static RGrid log_spaced(double lo, double hi, int count)
    {
        if (count < 2 || !(hi > lo)) throw std::invalid_argument("bad log-spaced radius range");
        std::vector<double> r(count);
        const double a = std::log(lo), b = std::log(hi);
        for (int i = 0; i < count; ++i) r[i] = std::exp(a + (b - a) * i / (count - 1));
        r.front() = lo;
        r.back() = hi;
        return RGrid(std::move(r));
    }

    /// count log-spaced radii from h to 2 L sqrt(n).
    static RGrid standard(const Box& box, int count = 40)
    {
        return log_spaced(box.spacing(), 2.0 * box.half_width() * std::sqrt(double(box.dim())), count);
    }

    const std::vector<double>& values() const { return r_; }
    std::size_t size() const { return r_.size(); }
    double operator[](std::size_t i) const { return r_[i]; }

private:
    std::vector<double> r_;
};

/// N_{r,p} = n/p_- for r > 1 and n/p^+ for r <= 1.
inline double n_rp(double r, const ExponentField& p)
{
    const int n = p.box().dim();
    return r > 1.0 ? n / p.p_minus() : n / p.p_plus();
}

struct CpValue {
    double value = 0.0;
    bool uncovered = false;  // r == r0 falls in none of the three cases
};

/// Exponent correction C_p of the characteristic-function bound, read off
/// the three-case table: r > r0 >= 1; (r > 1 > r0 or r < r0); 1 >= r > r0.
/// r == r0 is not covered by the table and is reported as 0 with a flag.
inline CpValue c_p(double r, double r0, const ExponentField& p)
{
    const int n = p.box().dim();
    const double spread = n / p.p_minus() - n / p.p_plus();
    if (r > r0 && r0 >= 1.0) return {spread, false};
    if ((r > 1.0 && 1.0 > r0) || r < r0) return {0.0, false};
    if (1.0 >= r && r > r0) return {-spread, false};
    return {0.0, true};
}

/// Evaluation settings shared by the ball-based norms.
struct EvalOptions {
    // Stride between evaluation centers, in cells. 0 selects every cell in
    // one dimension and at most 64 centers per axis otherwise.
    int center_stride = 0;

    int stride_for(const Box& box) const
    {
        if (center_stride > 0) return center_stride;
        if (box.dim() == 1) return 1;
        return std::max(1, (box.points_per_axis() + 63) / 64);
    }
};

namespace detail {

// Lattice indices spanned by the nonzero samples, per axis.
struct SupportBounds {
    std::array<long, kMaxDim> lo{}, hi{};  // inclusive
    bool empty = true;
};

inline SupportBounds support_bounds(const GridFunction& f)
{
    SupportBounds s;
    const Box& box = f.box();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;
        auto idx = box.unflatten(i);
        for (int a = 0; a < box.dim(); ++a) {
            if (s.empty) {
                s.lo[a] = s.hi[a] = idx[a];
            } else {
                s.lo[a] = std::min<long>(s.lo[a], idx[a]);
                s.hi[a] = std::max<long>(s.hi[a], idx[a]);
            }
        }
        if (s.empty) {
            for (int a = box.dim(); a < kMaxDim; ++a) s.lo[a] = s.hi[a] = 0;
            s.empty = false;
        }
    }
    return s;
}

// Evaluation centers on the cell-center lattice (every stride-th index,
// extended past the box) whose ball of radius r can reach the support.
template <class Fn>
void for_each_center(const Box& box, const SupportBounds& sb, double r, int stride, Fn&& fn)
{
    const int d = box.dim();
    const double h = box.spacing();
    std::array<long, kMaxDim> jlo{}, jhi{};
    const long reach = static_cast<long>(std::ceil(r / h)) + 1;
    for (int a = 0; a < d; ++a) {
        long lo = sb.lo[a] - reach, hi = sb.hi[a] + reach;
        // centers sit at indices off + stride * j
        const long off = stride / 2;
        jlo[a] = static_cast<long>(std::floor(double(lo - off) / stride));
        jhi[a] = static_cast<long>(std::ceil(double(hi - off) / stride));
    }
    std::array<long, kMaxDim> j{};
    for (int a = 0; a < d; ++a) j[a] = jlo[a];
    const long off = stride / 2;
    for (;;) {
        Point x{};
        for (int a = 0; a < d; ++a) x[a] = box.coord(off + stride * j[a]);
        fn(x);
        int a = d - 1;
        while (a >= 0 && j[a] == jhi[a]) {
            j[a] = jlo[a];
            --a;
        }
        if (a < 0) break;
        ++j[a];
    }
}

// (w sum v^q)^{1/q}, or max v for q = infinity, scaled by max v.
inline double lq_norm(const std::vector<double>& v, double weight, double q)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    if (m == 0.0) return 0.0;
    if (std::isinf(q)) return m;
    std::vector<double> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = std::pow(v[i] / m, q);
    return m * std::pow(weight * pairwise_sum(t), 1.0 / q);
}

// || x -> weight(x) ||f chi_B(x,r)|| ||_{L^q(x)} over the center lattice.
template <class Weight>
double ball_profile_norm(const RestrictedNorm& rn, const Box& box, const SupportBounds& sb, double r, double q,
                         int stride, Weight&& weight)
{
    std::vector<double> vals;
    for_each_center(box, sb, r, stride, [&](const Point& x) {
        double v = rn.ball_norm(box, x, r);
        vals.push_back(v == 0.0 ? 0.0 : weight(x) * v);
    });
    const double w = std::pow(stride * box.spacing(), box.dim());
    return lq_norm(vals, w, q);
}

} // namespace detail

/// || x -> ||f chi_{B(x,1)}||_{p(.)} ||_{L^q}.
inline double amalgam_norm_continuous(const GridFunction& f, const ExponentField& p, double q,
                                      const EvalOptions& opt = {})
{
    if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
    require_same_box(f.box(), p.box());
    auto sb = detail::support_bounds(f);
    if (sb.empty) return 0.0;
    RestrictedNorm rn(f, p);
    return detail::ball_profile_norm(rn, f.box(), sb, 1.0, q, opt.stride_for(f.box()), [](const Point&) { return 1.0; });
}

/// l^q over k of ||f chi_{Q_{r,k}}||_{p(.)}; only cubes meeting the box contribute.
inline double amalgam_norm_discrete(const GridFunction& f, const ExponentField& p, double q, double r)
{
    require_same_box(f.box(), p.box());
    if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
    if (!(r >= f.box().spacing() * (1.0 - 1e-12))) throw std::invalid_argument("cube below resolution");
    RestrictedNorm rn(f, p);
    std::vector<double> vals;
    for_each_cube(f.box(), r, [&](const auto&, auto runs) { vals.push_back(rn.norm(runs)); });
    return detail::lq_norm(vals, 1.0, q);
}

struct ScaleNorm {
    double norm = 0.0;
    double argmax_r = 0.0;
    std::vector<double> per_r;  // value at each radius of the grid
    bool nontrivial = true;     // parameters satisfy p^+ <= alpha <= q
};

/// Value at radius r of the ball-based Fofana functional:
/// || |B(x,r)|^{1/alpha - 1/p(x) - 1/q} ||f chi_B(x,r)||_{p(.)} ||_{L^q(x)}.
inline double fofana_profile(const GridFunction& f, const SpaceParams& sp, double r, const EvalOptions& opt = {})
{
    require_same_box(f.box(), sp.p().box());
    auto sb = detail::support_bounds(f);
    if (sb.empty) return 0.0;
    RestrictedNorm rn(f, sp.p());
    const Box& box = f.box();
    const double vol = ball_volume(box.dim(), r);
    const double base = reciprocal(sp.alpha()) - reciprocal(sp.q());
    return detail::ball_profile_norm(rn, box, sb, r, sp.q(), opt.stride_for(box), [&](const Point& x) {
        return std::pow(vol, base - 1.0 / sp.p().at(x));
    });
}

/// Max over the radius grid of fofana_profile.
inline ScaleNorm fofana_norm_continuous(const GridFunction& f, const SpaceParams& sp, const RGrid& rg,
                                        const EvalOptions& opt = {})
{
    require_same_box(f.box(), sp.p().box());
    ScaleNorm out;
    out.nontrivial = sp.nontrivial();
    out.per_r.assign(rg.size(), 0.0);
    auto sb = detail::support_bounds(f);
    if (sb.empty) return out;
    RestrictedNorm rn(f, sp.p());
    const Box& box = f.box();
    const double base = reciprocal(sp.alpha()) - reciprocal(sp.q());
    const int stride = opt.stride_for(box);
    parallel_for(rg.size(), [&](std::size_t k) {
        const double r = rg[k];
        const double vol = ball_volume(box.dim(), r);
        out.per_r[k] = detail::ball_profile_norm(rn, box, sb, r, sp.q(), stride, [&](const Point& x) {
            return std::pow(vol, base - 1.0 / sp.p().at(x));
        });
    });
    for (std::size_t k = 0; k < rg.size(); ++k)
        if (out.per_r[k] > out.norm) {
            out.norm = out.per_r[k];
            out.argmax_r = rg[k];
        }
    return out;
}

/// r^{n/alpha - N_{r,p}} times the cube amalgam norm at scale r.
inline double fofana_discrete_term(const GridFunction& f, const SpaceParams& sp, double r)
{
    const int n = f.box().dim();
    return std::pow(r, n * reciprocal(sp.alpha()) - n_rp(r, sp.p())) * amalgam_norm_discrete(f, sp.p(), sp.q(), r);
}

/// Max over the radius grid of fofana_discrete_term.
inline ScaleNorm fofana_norm_discrete(const GridFunction& f, const SpaceParams& sp, const RGrid& rg)
{
    require_same_box(f.box(), sp.p().box());
    for (double r : rg.values())
        if (r < f.box().spacing() * (1.0 - 1e-12)) throw std::invalid_argument("cube below resolution");
    ScaleNorm out;
    out.nontrivial = sp.nontrivial();
    out.per_r.assign(rg.size(), 0.0);
    if (f.is_zero()) return out;
    parallel_for(rg.size(), [&](std::size_t k) { out.per_r[k] = fofana_discrete_term(f, sp, rg[k]); });
    for (std::size_t k = 0; k < rg.size(); ++k)
        if (out.per_r[k] > out.norm) {
            out.norm = out.per_r[k];
            out.argmax_r = rg[k];
        }
    return out;
}

// ---------------------------------------------------------------------------
// BMO

/// Discrete mean of b over the cells of B(center, r) inside the box.
/// Returns nullopt when the ball holds no cell center.
inline std::optional<double> ball_mean(const GridFunction& b, const Point& center, double r)
{
    double s = 0.0, ref = 0.0;
    std::size_t count = 0;
    bool first = true;
    for_each_ball_run(b.box(), center, r, [&](std::size_t f0, std::size_t len) {
        for (std::size_t i = f0; i < f0 + len; ++i) {
            if (first) {
                ref = b[i];
                first = false;
            }
            s += b[i] - ref;
        }
        count += len;
    });
    if (count == 0) return std::nullopt;
    return ref + s / static_cast<double>(count);
}

/// (1/|B|) sum_B |b - c| h^n with discrete |B|, for a given reference value c.
inline std::optional<double> mean_deviation(const GridFunction& b, const Point& center, double r, double c)
{
    double s = 0.0;
    std::size_t count = 0;
    for_each_ball_run(b.box(), center, r, [&](std::size_t f0, std::size_t len) {
        for (std::size_t i = f0; i < f0 + len; ++i) s += std::abs(b[i] - c);
        count += len;
    });
    if (count == 0) return std::nullopt;
    return s / static_cast<double>(count);
}

/// Mean oscillation of b on B(center, r): mean |b - b_B|.
inline std::optional<double> mean_oscillation(const GridFunction& b, const Point& center, double r)
{
    auto m = ball_mean(b, center, r);
    if (!m) return std::nullopt;
    return mean_deviation(b, center, r, *m);
}

struct BmoResult {
    double value = 0.0;
    Point center{};
    double radius = 0.0;
};

/// sup over balls of the mean oscillation, with centers on a sub-lattice of at
/// most 64 cells per axis and radii from rg. Balls are clipped to the box.
inline BmoResult bmo_seminorm(const GridFunction& b, const RGrid& rg)
{
    const Box& box = b.box();
    const int n = box.points_per_axis();
    const int stride = std::max(1, (n + 63) / 64);
    std::vector<std::size_t> centers;
    for (std::size_t i = 0; i < box.cell_count(); ++i) {
        auto idx = box.unflatten(i);
        bool keep = true;
        for (int a = 0; a < box.dim(); ++a) keep = keep && (idx[a] % stride) == stride / 2;
        if (keep) centers.push_back(i);
    }
    std::vector<BmoResult> best(centers.size());
    parallel_for(centers.size(), [&](std::size_t c) {
        Point x = box.center(centers[c]);
        best[c].center = x;
        for (double r : rg.values()) {
            auto osc = mean_oscillation(b, x, r);
            if (osc && *osc > best[c].value) {
                best[c].value = *osc;
                best[c].radius = r;
            }
        }
    });
    BmoResult out;
    for (const auto& r : best)
        if (r.value > out.value) out = r;
    return out;
}

// ---------------------------------------------------------------------------
// Embedding and nontriviality

/// rg with r = 1 inserted if absent.
inline RGrid with_unit_radius(const RGrid& rg)
{
    std::vector<double> r = rg.values();
    if (std::find(r.begin(), r.end(), 1.0) != r.end()) return rg;
    r.push_back(1.0);
    std::sort(r.begin(), r.end());
    return RGrid(std::move(r));
}

struct EmbeddingCheck {
    double lhs = 0.0;       // amalgam norm
    double rhs = 0.0;       // Fofana norm
    double constant = 1.0;  // v_n^{1/p_- + 1/q - 1/alpha}
    bool holds(double rel = 1e-6) const { return lhs <= constant * rhs * (1.0 + rel); }
};

/// Amalgam norm against Fofana norm; requires p^+ <= alpha <= q. The Fofana
/// sup is taken over rg with r = 1 added. At r = 1 the weight
/// |B(x,1)|^{1/alpha - 1/p(x) - 1/q} is at least v_n^{-(1/p_- + 1/q - 1/alpha)},
/// which gives lhs <= constant * rhs exactly on the grid.
inline EmbeddingCheck embedding_check(const GridFunction& f, const SpaceParams& sp, const RGrid& rg,
                                      const EvalOptions& opt = {})
{
    if (!sp.nontrivial()) throw std::invalid_argument("parameter ordering violated: need p^+ <= alpha <= q");
    EmbeddingCheck out;
    out.lhs = amalgam_norm_continuous(f, sp.p(), sp.q(), opt);
    out.rhs = fofana_norm_continuous(f, sp, with_unit_radius(rg), opt).norm;
    const double e = 1.0 / sp.p().p_minus() + reciprocal(sp.q()) - reciprocal(sp.alpha());
    out.constant = std::max(1.0, std::pow(unit_ball_volume(f.box().dim()), e));
    return out;
}

/// Least-squares slope of log y against log x over points with y > 0.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    double den = m * sxx - sx * sx;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / den;
}

enum class BlowUp { bounded, large_r, small_r };

inline const char* to_string(BlowUp b)
{
    switch (b) {
    case BlowUp::bounded: return "bounded";
    case BlowUp::large_r: return "blow-up at large r";
    case BlowUp::small_r: return "blow-up at small r";
    }
    return "?";
}

struct TrivialityCurve {
    std::vector<double> r;
    std::vector<double> value;
    double slope_large = 0.0;  // fitted over the top decade of r
    double slope_small = 0.0;  // fitted over the bottom decade of r
    BlowUp verdict = BlowUp::bounded;
    Triviality expected = Triviality::nontrivial;
};

inline constexpr double kBlowUpSlope = 0.02;

/// r -> r^{n/alpha - N_{r,p}} _r||chi_{B(0,1)}||_{p(.),q}, with end slopes
/// and a classification of where (if anywhere) the curve grows without bound.
inline TrivialityCurve triviality_probe(const SpaceParams& sp, const RGrid& rg)
{
    const Box& box = sp.p().box();
    GridFunction chi = make_indicator(BallSpec{{}, 1.0}, box);
    TrivialityCurve out;
    out.expected = sp.triviality();
    out.r = rg.values();
    out.value.resize(rg.size());
    parallel_for(rg.size(), [&](std::size_t k) { out.value[k] = fofana_discrete_term(chi, sp, rg[k]); });
    const double rmin = rg.values().front(), rmax = rg.values().back();
    std::vector<double> xl, yl, xs, ys;
    for (std::size_t k = 0; k < rg.size(); ++k) {
        if (rg[k] >= rmax / 10.0 * (1 - 1e-12)) {
            xl.push_back(rg[k]);
            yl.push_back(out.value[k]);
        }
        if (rg[k] <= rmin * 10.0 * (1 + 1e-12)) {
            xs.push_back(rg[k]);
            ys.push_back(out.value[k]);
        }
    }
    out.slope_large = loglog_slope(xl, yl);
    out.slope_small = loglog_slope(xs, ys);
    if (out.slope_large > kBlowUpSlope)
        out.verdict = BlowUp::large_r;
    else if (out.slope_small < -kBlowUpSlope)
        out.verdict = BlowUp::small_r;
    return out;
}

} // namespace fofana
