#pragma once

// Variable-exponent Lebesgue calculus on the grid: the modular, the
// Luxemburg norm, conjugate exponents, the generalized Hoelder pairing and
// log-Hoelder diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fofana/grid.hpp"

namespace fofana {

struct LuxemburgResult {
    double norm = 0.0;
    double modular_at_norm = 0.0;
    int iterations = 0;
    double tolerance_achieved = 0.0;
};

inline constexpr double kModularTolerance = 1e-10;
inline constexpr double kLambdaRelTolerance = 1e-12;

/// h^n sum (|f_i| / lambda)^{p_i}.
inline double modular(const GridFunction& f, const ExponentField& p, double lambda)
{
    require_same_box(f.box(), p.box());
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    std::vector<double> terms(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double a = std::abs(f[i]);
        terms[i] = a == 0.0 ? 0.0 : std::pow(a / lambda, p[i]);
    }
    return f.box().cell_measure() * pairwise_sum(terms);
}

namespace detail {

// Modular equation in log form. With u = log(lambda):
//   m(u) = measure * sum_i exp(e_i (log a_i - u)),
// strictly decreasing in u whenever some a_i > 0.
class ModularEquation {
public:
    ModularEquation(std::span<const double> log_abs, std::span<const double> exps, double measure)
        : log_abs_(log_abs), exps_(exps), measure_(measure), terms_(log_abs.size())
    {
    }

    double operator()(double u) const
    {
        for (std::size_t i = 0; i < log_abs_.size(); ++i) terms_[i] = std::exp(exps_[i] * (log_abs_[i] - u));
        return measure_ * pairwise_sum(terms_);
    }

private:
    std::span<const double> log_abs_;
    std::span<const double> exps_;
    double measure_;
    mutable std::vector<double> terms_;
};

// Solves m(lambda) = 1 for the nonzero samples given as (log|f_i|, p_i).
// Bracket: start at max|f| * (h^n)^{1/p_-}, double (or halve) until the
// modular changes side, then bisect in log(lambda).
inline LuxemburgResult solve_luxemburg(std::span<const double> log_abs, std::span<const double> exps,
                                       double measure)
{
    LuxemburgResult res;
    if (log_abs.empty()) return res;
    ModularEquation m(log_abs, exps, measure);
    double log_max = *std::max_element(log_abs.begin(), log_abs.end());
    double p_minus = *std::min_element(exps.begin(), exps.end());
    const double step = std::log(2.0);
    double lo = log_max + std::log(measure) / p_minus;
    while (m(lo) < 1.0) {
        lo -= step;
        ++res.iterations;
    }
    double hi = lo + step;
    while (m(hi) > 1.0) {
        lo = hi;
        hi += step;
        ++res.iterations;
    }
    while (hi - lo > kLambdaRelTolerance) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (m(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        ++res.iterations;
    }
    double u = 0.5 * (lo + hi);
    res.norm = std::exp(u);
    res.modular_at_norm = m(u);
    res.tolerance_achieved = std::expm1(hi - lo);
    return res;
}

} // namespace detail

/// inf{lambda > 0 : modular(f, p, lambda) <= 1}, by bracketing and bisection.
inline LuxemburgResult luxemburg_norm(const GridFunction& f, const ExponentField& p)
{
    require_same_box(f.box(), p.box());
    std::vector<double> log_abs, exps;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) throw std::invalid_argument("non-finite sample");
        if (f[i] == 0.0) continue;
        log_abs.push_back(std::log(std::abs(f[i])));
        exps.push_back(p[i]);
    }
    return detail::solve_luxemburg(log_abs, exps, f.box().cell_measure());
}

/// Norms of f restricted to cell subsets, for the many-balls/many-cubes
/// loops of the amalgam and Fofana norms. A constant exponent uses the
/// closed form through per-run prefix sums; otherwise the modular equation
/// is solved on the gathered subset.
class RestrictedNorm {
public:
    RestrictedNorm(const GridFunction& f, const ExponentField& p)
        : measure_(f.box().cell_measure()), constant_(p.is_constant()), p0_(p.p_minus())
    {
        require_same_box(f.box(), p.box());
        const std::size_t n = f.size();
        if (constant_) {
            prefix_.assign(n + 1, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double a = std::abs(f[i]);
                prefix_[i + 1] = prefix_[i] + (a == 0.0 ? 0.0 : std::pow(a, p0_));
            }
        } else {
            log_abs_.resize(n);
            nonzero_.resize(n);
            exps_.assign(p.values().begin(), p.values().end());
            for (std::size_t i = 0; i < n; ++i) {
                nonzero_[i] = f[i] != 0.0;
                log_abs_[i] = nonzero_[i] ? std::log(std::abs(f[i])) : 0.0;
            }
        }
    }

    // Runs are (first_flat, count) pairs.
    template <class Runs>
    double norm(const Runs& runs) const
    {
        if (constant_) {
            double s = 0.0;
            for (const auto& [first, count] : runs) s += prefix_[first + count] - prefix_[first];
            if (!(s > 0.0)) return 0.0;
            return std::pow(measure_ * s, 1.0 / p0_);
        }
        thread_local std::vector<double> la, ex;
        la.clear();
        ex.clear();
        for (const auto& [first, count] : runs)
            for (std::size_t i = first; i < first + count; ++i)
                if (nonzero_[i]) {
                    la.push_back(log_abs_[i]);
                    ex.push_back(exps_[i]);
                }
        return detail::solve_luxemburg(la, ex, measure_).norm;
    }

    double ball_norm(const Box& box, const Point& center, double r) const
    {
        thread_local std::vector<std::pair<std::size_t, std::size_t>> runs;
        runs.clear();
        for_each_ball_run(box, center, r, [&](std::size_t first, std::size_t count) { runs.emplace_back(first, count); });
        return norm(runs);
    }

private:
    double measure_;
    bool constant_;
    double p0_;
    std::vector<double> prefix_;
    std::vector<double> log_abs_;
    std::vector<double> exps_;
    std::vector<char> nonzero_;
};

/// Pointwise p'(x) = p(x) / (p(x) - 1).
inline ExponentField conjugate(const ExponentField& p)
{
    std::vector<double> v(p.values().begin(), p.values().end());
    for (double& x : v) x = x / (x - 1.0);
    return ExponentField(p.box(), std::move(v));
}

/// Generalized Hoelder constant r_p = 1 + 1/p_- - 1/p^+.
inline double holder_constant(const ExponentField& p) { return 1.0 + 1.0 / p.p_minus() - 1.0 / p.p_plus(); }

struct PairingCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds(double slack = 1e-9) const { return lhs <= rhs + slack; }
};

/// lhs = integral |fg|, rhs = r_p ||f||_{p(.)} ||g||_{p'(.)}.
inline PairingCheck holder_pairing_check(const GridFunction& f, const GridFunction& g, const ExponentField& p)
{
    require_same_box(f.box(), g.box());
    require_same_box(f.box(), p.box());
    PairingCheck out;
    out.lhs = integrate((f * g).abs());
    out.rhs = holder_constant(p) * luxemburg_norm(f, p).norm * luxemburg_norm(g, conjugate(p)).norm;
    return out;
}

struct LogHolderReport {
    double c_local = 0.0;  // sup |p(x)-p(y)| (-log|x-y|), |x-y| <= 1/2
    double c_decay = 0.0;  // sup |p(x)-p(y)| log(|x|+e), |y| >= |x|
    std::size_t sampled_pairs = 0;
};

/// Best constants of the local and decay log-Hoelder conditions over a
/// deterministic pair sample: all pairs of a sub-grid with at most 64 cells
/// per axis, all nearest-neighbour pairs, and pair_budget pseudo-random pairs
/// drawn from a fixed seed (so a larger budget samples a superset).
inline LogHolderReport log_holder_check(const ExponentField& p, std::size_t pair_budget,
                                        std::uint64_t seed = 0x5eed)
{
    if (pair_budget < 1) throw std::invalid_argument("pair budget must be at least 1");
    const Box& box = p.box();
    const int d = box.dim();
    LogHolderReport rep;
    auto visit = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        Point x = box.center(i), y = box.center(j);
        double dist2 = 0.0, nx = 0.0, ny = 0.0;
        for (int a = 0; a < d; ++a) {
            dist2 += (x[a] - y[a]) * (x[a] - y[a]);
            nx += x[a] * x[a];
            ny += y[a] * y[a];
        }
        double dist = std::sqrt(dist2);
        double dp = std::abs(p[i] - p[j]);
        ++rep.sampled_pairs;
        if (dist <= 0.5) rep.c_local = std::max(rep.c_local, dp * -std::log(dist));
        double inner = std::sqrt(std::min(nx, ny));
        rep.c_decay = std::max(rep.c_decay, dp * std::log(inner + std::numbers::e));
    };

    const int n = box.points_per_axis();
    const int stride = std::max(1, (n + 63) / 64);
    std::vector<std::size_t> coarse;
    for (std::size_t i = 0; i < box.cell_count(); ++i) {
        auto idx = box.unflatten(i);
        bool keep = true;
        for (int a = 0; a < d; ++a) keep = keep && idx[a] % stride == 0;
        if (keep) coarse.push_back(i);
    }
    for (std::size_t a = 0; a < coarse.size(); ++a)
        for (std::size_t b = a + 1; b < coarse.size(); ++b) visit(coarse[a], coarse[b]);

    for (std::size_t i = 0; i < box.cell_count(); ++i) {
        auto idx = box.unflatten(i);
        for (int a = 0; a < d; ++a) {
            if (idx[a] + 1 >= n) continue;
            auto nb = idx;
            ++nb[a];
            visit(i, box.flatten(nb));
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, box.cell_count() - 1);
    for (std::size_t k = 0; k < pair_budget; ++k) {
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        visit(i, j);
    }
    return rep;
}

} // namespace fofana
