// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Desk-scale defaults: n = 1, L = 4, N = 512.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fofana/harness/suites.hpp"

using namespace fofana;
using namespace fofana::harness;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Hard cases and slopes of a report whose id passes `keep`; empty selection fails.
Outcome select(const VerificationReport& r, const std::function<bool(const std::string&)>& keep)
{
    std::size_t n = 0, bad = 0;
    std::string first;
    for (const auto& c : r.cases)
        if (c.hard && keep(c.id)) {
            ++n;
            if (!c.passed()) {
                ++bad;
                if (first.empty()) first = c.id + " lhs=" + num(c.lhs) + " rhs=" + num(c.rhs);
            }
        }
    for (const auto& s : r.slopes)
        if (s.hard && keep(s.id)) {
            ++n;
            if (!s.passed()) {
                ++bad;
                if (first.empty()) first = s.id + " fitted=" + num(s.fitted) + " expected=" + num(s.expected);
            }
        }
    Outcome o{n > 0 && bad == 0, std::to_string(n) + " checks, " + std::to_string(bad) + " violations"};
    if (!first.empty()) o.detail += "; first: " + first;
    return o;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

SuiteSpec suite(const std::string& name)
{
    SuiteSpec s;
    s.name = name;
    s.seed = 7;
    return s;
}

const Box kBox(1, 4.0, 512);

Outcome luxemburg_analytic()
{
    const double h = kBox.spacing();
    GridFunction chi = make_indicator(CubeSpec{{0}, 1.0}, kBox);
    GridFunction x = GridFunction::from(kBox, [](const Point& p) { return p[0] >= 0.0 && p[0] < 1.0 ? p[0] : 0.0; });
    double worst_err = 0.0, worst_res = 0.0;
    for (double p0 : {1.5, 2.0, 3.0}) {
        ExponentField p = ExponentField::constant(kBox, p0);
        auto a = luxemburg_norm(chi, p), b = luxemburg_norm(x, p);
        worst_err = std::max(worst_err, std::abs(a.norm - 1.0));
        double exact = std::pow(1.0 / (p0 + 1.0), 1.0 / p0);
        worst_err = std::max(worst_err, std::abs(b.norm - exact) / exact);
        worst_res = std::max({worst_res, std::abs(modular(chi, p, a.norm) - 1.0), std::abs(modular(x, p, b.norm) - 1.0)});
    }
    return {worst_err <= 2.0 * h && worst_res <= 1e-10,
            "max rel error " + num(worst_err) + " (bound " + num(2.0 * h) + "), modular residual " + num(worst_res)};
}

Outcome holder()
{
    VerificationReport r = run_suite(suite("holder"));
    std::size_t pairs = 0;
    for (const auto& c : r.cases) pairs += starts_with(c.id, "pair ");
    Outcome o = select(r, [](const std::string&) { return true; });
    o.pass = o.pass && pairs == 200;
    o.detail = std::to_string(pairs) + " pairs, " + o.detail;
    return o;
}

Outcome envelopes()
{
    VerificationReport r = run_suite(suite("char-norms"));
    Outcome o = select(r, [](const std::string& id) { return starts_with(id, "cube") || starts_with(id, "ball"); });
    o.detail += "; cube envelope " + r.notes["cube_envelope"].dump() + ", ball envelope " + r.notes["ball_envelope"].dump();
    return o;
}

Outcome equivalence()
{
    VerificationReport r = run_suite(suite("equivalence"));
    Outcome o = select(r, [](const std::string& id) { return starts_with(id, "band C"); });
    o.detail += "; C40/C80 (p=2 q=6 alpha=3) " + num(r.notes["band p=2 q=6 alpha=3"]["C40"].get<double>()) + "/" +
                num(r.notes["band p=2 q=6 alpha=3"]["C80"].get<double>());
    return o;
}

Outcome frac_analytic()
{
    const double h = kBox.spacing();
    GridFunction chi = make_indicator(BallSpec{Point{}, 1.0}, kBox);
    GridFunction I = frac_integral(chi, KernelPlan(0.5));
    Point two{};
    two[0] = 2.0;
    const double e0 = std::abs(point_value(I, Point{}) - 4.0) / 4.0;
    const double exact2 = 2.0 * (std::sqrt(3.0) - 1.0);
    const double e2 = std::abs(point_value(I, two) - exact2) / exact2;
    // Symmetry: int (I f) g = int f (I g).
    double sym = 0.0;
    std::mt19937_64 rng(7);
    for (int k = 0; k < 5; ++k) {
        GridFunction f = random_piecewise(kBox, rng, 16, 3.0, -1.0, 1.0);
        GridFunction g = random_piecewise(kBox, rng, 24, 2.0, -1.0, 1.0);
        KernelPlan kp(0.25 + 0.15 * k);
        double a = integrate(frac_integral(f, kp) * g), b = integrate(f * frac_integral(g, kp));
        sym = std::max(sym, std::abs(a - b) / std::abs(a));
    }
    bool pass = e0 <= 5.0 * std::sqrt(h) && e2 <= 3.0 * h && sym <= 1e-10;
    return {pass, "rel err at 0: " + num(e0) + " (bound " + num(5.0 * std::sqrt(h)) + "), at 2: " + num(e2) +
                      " (bound " + num(3.0 * h) + "), symmetry " + num(sym)};
}

Outcome kernel_identity()
{
    const double h = kBox.spacing();
    const double C = 0.1;
    GridFunction f = bump(kBox, Point{}, 2.0);
    double worst = 0.0;
    bool pass = true;
    for (double gamma : {0.25, 0.5})
        for (double t : {0.5, 2.0, 4.0}) {
            double dev = kernel_identity_deviation(f, gamma, t);
            double bound = C * std::pow(h, std::min(gamma, 1.0));
            pass = pass && dev <= bound;
            worst = std::max(worst, dev / bound);
        }
    return {pass, "max deviation / (C h^min(gamma,1)) = " + num(worst) + " with C = 0.1"};
}

Outcome necessity()
{
    const RGrid rg = RGrid::standard(kBox, 40);
    SpaceParams sp1(ExponentField::constant(kBox, 2.0), 6.0, 3.0);
    const double gamma = 0.25, n = 1.0;
    const std::vector<double> ts = {1.0, 2.0, 4.0, 8.0};
    GridFunction f = bump(kBox, Point{}, 2.0);
    const double matched = 1.0 / (1.0 / 3.0 - gamma / n);
    // Delta = 0.25: n/alpha - n/beta' = gamma - 0.25 = 0, so beta' = alpha.
    const double mismatched = 3.0;
    ProbeResult a = frac_necessity_probe(f, sp1, gamma, matched, ts, rg);
    ProbeResult b = frac_necessity_probe(f, sp1, gamma, mismatched, ts, rg);
    bool pass = std::abs(a.fitted_slope) <= 0.1 && std::abs(std::abs(b.fitted_slope) - 0.25) <= 0.1;
    return {pass, "matched beta=" + num(matched) + " slope " + num(a.fitted_slope) + "; beta'=3 (Delta=0.25) slope " +
                      num(b.fitted_slope) + ", |slope| target 0.25"};
}

Outcome duality()
{
    VerificationReport r = run_suite(suite("duality"));
    std::size_t pairs = 0;
    for (const auto& c : r.cases) pairs += c.hard && starts_with(c.id, "pair ");
    Outcome o = select(r, [](const std::string& id) { return starts_with(id, "pair "); });
    o.pass = o.pass && pairs == 50;
    return o;
}

Outcome char_slopes()
{
    const RGrid rg = RGrid::standard(kBox, 40);
    SpaceParams sp(ExponentField::constant(kBox, 2.0), 6.0, 3.0);
    std::vector<double> r0s = {0.25, 0.5, 1.0, 2.0, 4.0}, fn, hn;
    for (double r0 : r0s) {
        GridFunction chi = make_indicator(BallSpec{Point{}, r0}, kBox);
        fn.push_back(fofana_norm_continuous(chi, sp, rg).norm);
        hn.push_back(h_norm_upper_bound(chi, sp.dual(), rg).bound);
    }
    // Constant p: C_p = 0 in every case of the table.
    const double sf = loglog_slope(r0s, fn), sh = loglog_slope(r0s, hn);
    const double ef = 1.0 / 3.0, eh = 1.0 - 1.0 / 3.0;
    bool pass = std::abs(sf - ef) <= 0.1 && std::abs(sh - eh) <= 0.1;
    return {pass, "Fofana slope " + num(sf) + " (expected " + num(ef) + "), H slope " + num(sh) + " (expected " +
                      num(eh) + ")"};
}

Outcome commutator_check()
{
    VerificationReport r = run_suite(suite("commutator-sufficiency"));
    Outcome o = select(r, [](const std::string&) { return true; });
    o.detail += "; max ratio N/2N " + num(r.notes["max_ratio"].get<double>()) + "/" +
                num(r.notes["max_ratio_refined"].get<double>());
    return o;
}

Outcome bmo()
{
    VerificationReport r = run_suite(suite("bmo"));
    Outcome o = select(r, [](const std::string& id) {
        return starts_with(id, "||const||") || starts_with(id, "nested balls") || starts_with(id, "dilation stability") ||
               starts_with(id, "per-step") || starts_with(id, "telescoped");
    });
    o.detail += "; recorded C = " + num(r.notes["nested_C"].get<double>()) + ", ||log||_* = " +
                num(r.notes["bmo_log"].get<double>());
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        double time_limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Luxemburg norm analytic agreement", 1.0, luxemburg_analytic},
        {2, "Hoelder suite", 30.0, holder},
        {3, "characteristic-function envelopes", 0.0, envelopes},
        {4, "discrete/continuous equivalence band", 0.0, equivalence},
        {5, "fractional integral analytic checks", 0.0, frac_analytic},
        {6, "dilation kernel identity", 0.0, kernel_identity},
        {7, "necessity slopes", 300.0, necessity},
        {8, "duality pairing", 0.0, duality},
        {9, "characteristic-function slopes", 0.0, char_slopes},
        {10, "commutator", 0.0, commutator_check},
        {11, "BMO machinery", 0.0, bmo},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0.0 && dt >= c.time_limit) {
            o.pass = false;
            o.detail += "; runtime over " + num(c.time_limit) + " s";
        }
        failed += !o.pass;
        std::printf("criterion %2d %s  %s: %s [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(),
                    o.detail.c_str(), dt);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
