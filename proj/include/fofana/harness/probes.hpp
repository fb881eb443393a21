#pragma once

// Operator probes: ratio tables for I_gamma and [b, I_gamma] between Fofana
// spaces, dilation-family slope fits, the delta_t kernel identity and the
// commutator lower-bound diagnostic.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fofana/harness/families.hpp"
#include "fofana/operators.hpp"
#include "fofana/spaces.hpp"

namespace fofana::harness {

/// Target exponents of I_gamma: 1/p2 = 1/p1 - gamma/n, 1/beta = 1/alpha - gamma/n.
struct FracTarget {
    ExponentField p2;
    double beta;
};

inline FracTarget frac_target(const SpaceParams& sp1, double gamma)
{
    const ExponentField& p1 = sp1.p();
    const int n = p1.box().dim();
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(gamma < n / p1.p_plus())) throw std::invalid_argument("exponent leaves P: need gamma < n/p1^+");
    std::vector<double> v(p1.values().begin(), p1.values().end());
    for (double& x : v) x = 1.0 / (1.0 / x - gamma / n);
    const double inv_beta = reciprocal(sp1.alpha()) - gamma / n;
    if (!(inv_beta > 0.0)) throw std::invalid_argument("exponent leaves P: 1/beta = 1/alpha - gamma/n <= 0");
    ExponentField p2(p1.box(), std::move(v));
    if (!(p2.p_minus() > 1.0)) throw std::invalid_argument("exponent leaves P");
    return {std::move(p2), 1.0 / inv_beta};
}

struct RatioRow {
    std::string name;
    double t = 1.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
};

struct RatioTable {
    std::vector<RatioRow> rows;
    std::vector<double> t_values;
    std::vector<double> max_ratio_by_t;
    double max_ratio = 0.0;
    double spread = 0.0;  // max_t / min_t - 1 of max_ratio_by_t
    double beta = 0.0;
    double p2_minus = 0.0, p2_plus = 0.0;
};

inline void finish_table(RatioTable& tab)
{
    tab.max_ratio_by_t.assign(tab.t_values.size(), 0.0);
    for (const RatioRow& r : tab.rows) {
        auto it = std::find(tab.t_values.begin(), tab.t_values.end(), r.t);
        auto k = static_cast<std::size_t>(it - tab.t_values.begin());
        tab.max_ratio_by_t[k] = std::max(tab.max_ratio_by_t[k], r.ratio);
        tab.max_ratio = std::max(tab.max_ratio, r.ratio);
    }
    auto [lo, hi] = std::minmax_element(tab.max_ratio_by_t.begin(), tab.max_ratio_by_t.end());
    tab.spread = *lo > 0.0 ? *hi / *lo - 1.0 : std::numeric_limits<double>::infinity();
}

/// ||I_gamma f_t||_{(p2,q)^beta} / ||f_t||_{(p1,q)^alpha} for f_t = delta_t f,
/// every family member f and every t.
inline RatioTable frac_sufficiency_probe(const SpaceParams& sp1, double gamma, const std::vector<NamedFunction>& family,
                                         const std::vector<double>& ts, const RGrid& rg)
{
    FracTarget tg = frac_target(sp1, gamma);
    SpaceParams sp2(tg.p2, sp1.q(), tg.beta);
    KernelPlan kp(gamma);
    RatioTable tab;
    tab.t_values = ts;
    tab.beta = tg.beta;
    tab.p2_minus = tg.p2.p_minus();
    tab.p2_plus = tg.p2.p_plus();
    for (const NamedFunction& nf : family)
        for (double t : ts) {
            GridFunction ft = scale_argument(nf.f, t);
            if (ft.is_zero()) continue;
            RatioRow row{nf.name, t};
            row.numerator = fofana_norm_continuous(frac_integral(ft, kp), sp2, rg).norm;
            row.denominator = fofana_norm_continuous(ft, sp1, rg).norm;
            row.ratio = row.denominator > 0.0 ? row.numerator / row.denominator : 0.0;
            tab.rows.push_back(row);
        }
    finish_table(tab);
    return tab;
}

/// Dilation-family scaling fit: y(t) against t on log-log axes.
struct ProbeResult {
    std::vector<double> t_values;
    std::vector<double> lhs_norms;  // the ratio at each t
    double fitted_slope = 0.0;
    double expected_slope = 0.0;
    double tolerance = 0.1;
    bool verdict() const { return std::isfinite(fitted_slope) && std::abs(fitted_slope - expected_slope) <= tolerance; }
};

/// Slope of t -> ||I_gamma delta_t f||_{(p2,q)^{beta'}} / ||delta_t f||_{(p1,q)^alpha}.
/// For constant exponents the ratio is exactly proportional to
/// t^{n/alpha - n/beta' - gamma}, which vanishes iff beta' is the matched beta.
inline ProbeResult frac_necessity_probe(const GridFunction& f, const SpaceParams& sp1, double gamma, double beta_prime,
                                        const std::vector<double>& ts, const RGrid& rg)
{
    if (ts.size() < 4) throw std::invalid_argument("slope fit needs at least 4 points");
    FracTarget tg = frac_target(sp1, gamma);
    SpaceParams sp2(tg.p2, sp1.q(), beta_prime);
    KernelPlan kp(gamma);
    const int n = f.box().dim();
    ProbeResult out;
    out.t_values = ts;
    for (double t : ts) {
        GridFunction ft = scale_argument(f, t);
        double num = fofana_norm_continuous(frac_integral(ft, kp), sp2, rg).norm;
        double den = fofana_norm_continuous(ft, sp1, rg).norm;
        out.lhs_norms.push_back(num / den);
    }
    out.fitted_slope = loglog_slope(out.t_values, out.lhs_norms);
    out.expected_slope = n * reciprocal(sp1.alpha()) - n * reciprocal(beta_prime) - gamma;
    return out;
}

/// Slope of t -> ||delta_{1/t} f|| in the given Fofana space.
inline ProbeResult dilation_scaling_probe(const GridFunction& f, const SpaceParams& sp, const std::vector<double>& ts,
                                          const RGrid& rg, double expected)
{
    ProbeResult out;
    out.t_values = ts;
    out.expected_slope = expected;
    for (double t : ts) out.lhs_norms.push_back(fofana_norm_continuous(scale_argument(f, 1.0 / t), sp, rg).norm);
    out.fitted_slope = loglog_slope(out.t_values, out.lhs_norms);
    return out;
}

/// max |I_gamma(delta_t f) - t^{-gamma} delta_t I_gamma f| over cells with
/// |x|_inf <= L / max(t, 1) - 2h, where delta_t I_gamma f only reads values
/// computed inside the box.
inline double kernel_identity_deviation(const GridFunction& f, double gamma, double t)
{
    const Box& box = f.box();
    KernelPlan kp(gamma);
    GridFunction lhs = frac_integral(scale_argument(f, t), kp);
    GridFunction rhs = std::pow(t, -gamma) * scale_argument(frac_integral(f, kp), t);
    const double lim = box.half_width() / std::max(t, 1.0) - 2.0 * box.spacing();
    double dev = 0.0;
    for (std::size_t i = 0; i < box.cell_count(); ++i) {
        Point x = box.center(i);
        bool inside = true;
        for (int a = 0; a < box.dim(); ++a) inside = inside && std::abs(x[a]) <= lim;
        if (inside) dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
    }
    return dev;
}

struct CommutatorTable {
    std::vector<RatioRow> rows;
    double bmo = 0.0;
    double max_ratio = 0.0;
    double beta = 0.0;
};

/// ||[b, I_gamma] f||_{(p2,q)^beta} / (||b||_* ||f||_{(p1,q)^alpha}) over the
/// family; 0 when ||b||_* = 0.
inline CommutatorTable commutator_sufficiency_probe(const GridFunction& b, const SpaceParams& sp1, double gamma,
                                                    const std::vector<NamedFunction>& family, const RGrid& rg)
{
    FracTarget tg = frac_target(sp1, gamma);
    SpaceParams sp2(tg.p2, sp1.q(), tg.beta);
    KernelPlan kp(gamma);
    CommutatorTable tab;
    tab.beta = tg.beta;
    tab.bmo = bmo_seminorm(b, rg).value;
    for (const NamedFunction& nf : family) {
        RatioRow row{nf.name, 1.0};
        row.denominator = fofana_norm_continuous(nf.f, sp1, rg).norm;
        if (tab.bmo > 0.0 && row.denominator > 0.0) {
            row.numerator = fofana_norm_continuous(commutator(b, nf.f, kp), sp2, rg).norm;
            row.ratio = row.numerator / (tab.bmo * row.denominator);
        }
        tab.max_ratio = std::max(tab.max_ratio, row.ratio);
        tab.rows.push_back(row);
    }
    return tab;
}

struct LowerProbeRow {
    Point x0{};
    double t = 0.0;
    double oscillation = 0.0;
    double proxy = 0.0;
};

struct LowerProbeTable {
    std::vector<LowerProbeRow> rows;
    double c_fit = 0.0;  // least squares oscillation ~ c_fit * proxy
    double max_excess = 0.0;  // max oscillation - c_fit * proxy
    double proxy_slope = 0.0;  // log-log slope of proxy against t at the first center
};

/// For balls B = B(x0, t) and shifted balls B' = B(x0 + t z0, t) with |z0| >= 2:
/// oscillation (1/|B|) int_B |b - b_{B'}| against the commutator proxy
/// t^{-n-gamma+n/beta} max_m ||[b, I_gamma](e_m chi_{B'})||_{(p2,q)^beta},
/// e_0 = 1, e_1(x) = cos(2 x_0 / t).
inline LowerProbeTable commutator_bmo_lower_probe(const GridFunction& b, double gamma, const SpaceParams& sp1,
                                                  const std::vector<Point>& centers, const std::vector<double>& ts,
                                                  const Point& z0, const RGrid& rg)
{
    const Box& box = b.box();
    const int n = box.dim();
    double z2 = 0.0;
    for (int a = 0; a < n; ++a) z2 += z0[a] * z0[a];
    if (z2 < 4.0) throw std::invalid_argument("z0 too close to the origin: need 0 outside B(z0, 2)");
    FracTarget tg = frac_target(sp1, gamma);
    SpaceParams sp2(tg.p2, sp1.q(), tg.beta);
    KernelPlan kp(gamma);
    LowerProbeTable tab;
    for (const Point& x0 : centers)
        for (double t : ts) {
            Point zc = x0;
            for (int a = 0; a < n; ++a) zc[a] += t * z0[a];
            auto mean_shift = ball_mean(b, zc, t);
            auto osc = mean_shift ? mean_deviation(b, x0, t, *mean_shift) : std::nullopt;
            if (!osc) continue;
            GridFunction chi = make_indicator(BallSpec{zc, t}, box);
            double best = 0.0;
            for (int m = 0; m < 2; ++m) {
                GridFunction em = GridFunction::from(box, [&](const Point& x) { return m == 0 ? 1.0 : std::cos(2.0 * x[0] / t); });
                best = std::max(best, fofana_norm_continuous(commutator(b, em * chi, kp), sp2, rg).norm);
            }
            LowerProbeRow row{x0, t, *osc, std::pow(t, -n - gamma + n / tg.beta) * best};
            tab.rows.push_back(row);
        }
    double sxy = 0.0, sxx = 0.0;
    for (const auto& r : tab.rows) {
        sxy += r.oscillation * r.proxy;
        sxx += r.proxy * r.proxy;
    }
    tab.c_fit = sxx > 0.0 ? sxy / sxx : 0.0;
    for (const auto& r : tab.rows) tab.max_excess = std::max(tab.max_excess, r.oscillation - tab.c_fit * r.proxy);
    std::vector<double> tx, py;
    for (const auto& r : tab.rows)
        if (r.x0 == tab.rows.front().x0) {
            tx.push_back(r.t);
            py.push_back(r.proxy);
        }
    if (tx.size() >= 2) tab.proxy_slope = loglog_slope(tx, py);
    return tab;
}

/// Nested balls 2^{j}B around one center: d_j = |b_{2^{j+1}B} - b_B|, j = 0..J-1,
/// with the per-step bound |b_{2B'} - b_{B'}| <= (#2B'/#B') osc(2B').
struct NestedBallCurve {
    std::vector<double> j;
    std::vector<double> d;
    std::vector<double> step;        // |b_{2B'} - b_{B'}|
    std::vector<double> step_bound;  // (#2B'/#B') osc(2B')
    double slope = 0.0;              // least squares slope of d_j against j
};

inline std::size_t ball_cell_count(const Box& box, const Point& c, double r)
{
    std::size_t cnt = 0;
    for_each_ball_run(box, c, r, [&](std::size_t, std::size_t k) { cnt += k; });
    return cnt;
}

inline NestedBallCurve nested_ball_curve(const GridFunction& b, const Point& c, double r0, int J)
{
    NestedBallCurve out;
    const Box& box = b.box();
    auto m0 = ball_mean(b, c, r0);
    if (!m0) throw std::invalid_argument("base ball holds no cell");
    for (int j = 0; j <= J; ++j) {
        const double r = r0 * std::ldexp(1.0, j);
        auto ms = ball_mean(b, c, r);
        auto mb = ball_mean(b, c, 2.0 * r);
        auto osc = mean_oscillation(b, c, 2.0 * r);
        out.step.push_back(std::abs(*mb - *ms));
        out.step_bound.push_back(double(ball_cell_count(box, c, 2.0 * r)) / double(ball_cell_count(box, c, r)) * *osc);
        out.j.push_back(j);
        out.d.push_back(std::abs(*mb - *m0));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = out.j.size();
    for (std::size_t k = 0; k < out.j.size(); ++k) {
        sx += out.j[k];
        sy += out.d[k];
        sxx += out.j[k] * out.j[k];
        sxy += out.j[k] * out.d[k];
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

/// sup_B ||(b - b_B)^k chi_B||_p / ||chi_B||_p over balls with centers from
/// `centers` and radii from rg.
inline double power_oscillation_sup(const GridFunction& b, const ExponentField& p, int k, const std::vector<Point>& centers,
                                    const RGrid& rg)
{
    const Box& box = b.box();
    double best = 0.0;
    for (const Point& c : centers)
        for (double r : rg.values()) {
            auto m = ball_mean(b, c, r);
            if (!m) continue;
            GridFunction chi = make_indicator(BallSpec{c, r}, box);
            std::vector<double> s(box.cell_count(), 0.0);
            for (std::size_t i = 0; i < s.size(); ++i)
                if (chi[i] != 0.0) s[i] = std::pow(b[i] - *m, k);
            double num = luxemburg_norm(GridFunction(box, std::move(s)), p).norm;
            double den = luxemburg_norm(chi, p).norm;
            best = std::max(best, num / den);
        }
    return best;
}

} // namespace fofana::harness
