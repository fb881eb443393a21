#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fofana/harness/families.hpp"
#include "fofana/spaces.hpp"
#include "oracles.hpp"

using namespace fofana;
using harness::bump;

namespace {

const Box kBox(1, 4.0, 512);
const double kH = kBox.spacing();

GridFunction interval(const Box& box, double a, double b)
{
    return GridFunction::from(box, [&](const Point& x) { return x[0] >= a && x[0] < b ? 1.0 : 0.0; });
}

ExponentField constant(double p) { return ExponentField::constant(kBox, p); }

} // namespace

TEST(SpaceParams, ConjugatesAndInfinity)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    EXPECT_DOUBLE_EQ(1 / sp.q() + 1 / sp.q_conj(), 1.0);
    EXPECT_DOUBLE_EQ(1 / sp.alpha() + 1 / sp.alpha_conj(), 1.0);
    SpaceParams inf(constant(2.0), kInfinity, kInfinity);
    EXPECT_DOUBLE_EQ(inf.q_conj(), 1.0);
    SpaceParams one(constant(2.0), 1.0, 1.0);
    EXPECT_TRUE(std::isinf(one.q_conj()));
    EXPECT_THROW(SpaceParams(constant(2.0), 0.5, 3.0), std::invalid_argument);
    EXPECT_THROW(SpaceParams(constant(2.0), 6.0, 0.9), std::invalid_argument);
    SpaceParams d = sp.dual();
    EXPECT_DOUBLE_EQ(d.q(), 1.2);
    EXPECT_DOUBLE_EQ(d.alpha(), 1.5);
    EXPECT_DOUBLE_EQ(d.p().p_plus(), 2.0);
}

TEST(SpaceParams, Triviality)
{
    auto p23 = ExponentField::from(kBox, [](const Point& x) { return x[0] < 0 ? 2.0 : 3.0; });
    EXPECT_EQ(SpaceParams(p23, 6.0, 3.0).triviality(), Triviality::nontrivial);
    EXPECT_EQ(SpaceParams(p23, 6.0, 2.5).triviality(), Triviality::alpha_inside_p_range);
    EXPECT_EQ(SpaceParams(p23, 6.0, 1.5).triviality(), Triviality::alpha_below_p_minus);
    EXPECT_EQ(SpaceParams(p23, 6.0, 8.0).triviality(), Triviality::alpha_above_q);
    EXPECT_TRUE(SpaceParams(p23, 3.0, 3.0).nontrivial());
}

TEST(RGrid, Validation)
{
    EXPECT_THROW(RGrid({}), std::invalid_argument);
    EXPECT_THROW(RGrid({1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(RGrid({-1.0, 1.0}), std::invalid_argument);
    RGrid rg = RGrid::standard(kBox);
    EXPECT_EQ(rg.size(), 40u);
    EXPECT_DOUBLE_EQ(rg[0], kH);
    EXPECT_DOUBLE_EQ(rg[39], 8.0);
    RGrid g = RGrid::log_spaced(0.3, 3.0, 4);
    RGrid u = with_unit_radius(g);
    EXPECT_EQ(u.size(), 5u);
    EXPECT_DOUBLE_EQ(u[2], 1.0);
    EXPECT_EQ(with_unit_radius(u).size(), 5u);
}

TEST(NpCase, Table)
{
    auto p = ExponentField::from(kBox, [](const Point& x) { return x[0] < 0 ? 2.0 : 3.0; });
    EXPECT_DOUBLE_EQ(n_rp(2.0, p), 0.5);
    EXPECT_DOUBLE_EQ(n_rp(1.0, p), 1.0 / 3.0);
    const double spread = 0.5 - 1.0 / 3.0;
    EXPECT_DOUBLE_EQ(c_p(4.0, 2.0, p).value, spread);
    EXPECT_DOUBLE_EQ(c_p(2.0, 0.5, p).value, 0.0);
    EXPECT_DOUBLE_EQ(c_p(0.5, 2.0, p).value, 0.0);
    EXPECT_DOUBLE_EQ(c_p(0.5, 0.25, p).value, -spread);
    EXPECT_TRUE(c_p(1.0, 1.0, p).uncovered);
    EXPECT_FALSE(c_p(0.5, 0.25, p).uncovered);
}

TEST(Amalgam, Examples)
{
    auto chi = interval(kBox, 0, 1);
    EXPECT_NEAR(amalgam_norm_continuous(chi, constant(2.0), kInfinity), 1.0, 3 * kH);
    EXPECT_EQ(amalgam_norm_continuous(GridFunction(kBox), constant(2.0), 2.0), 0.0);
    double v = amalgam_norm_continuous(chi, constant(2.0), 2.0);
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 2.0);
    // Continuum value: the overlap length integrates to 2.
    EXPECT_NEAR(v, std::sqrt(2.0), 3 * kH);
}

TEST(Amalgam, BruteForceReference)
{
    // Double loop over x and cells at N = 128.
    const double ref = 1.39194109070751;
    Box b(1, 4.0, 128);
    auto fv = oracle::sample(4.0, 128, [](double x) { return x >= 0 && x < 1 ? 1.0 : 0.0; });
    EXPECT_NEAR(oracle::amalgam(fv, 4.0, 2.0, 2.0), ref, 1e-12);
    EXPECT_NEAR(amalgam_norm_continuous(GridFunction(b, fv), ExponentField::constant(b, 2.0), 2.0), ref, 1e-12);
}

TEST(AmalgamDiscrete, Examples)
{
    EXPECT_NEAR(amalgam_norm_discrete(interval(kBox, 0, 1), constant(2.0), 1.0, 1.0), 1.0, kH);
    EXPECT_NEAR(amalgam_norm_discrete(interval(kBox, 0, 2), constant(2.0), 2.0, 1.0), std::sqrt(2.0), 2 * kH);
    EXPECT_NEAR(amalgam_norm_discrete(interval(kBox, 0, 1), constant(2.0), 1.0, 0.5), std::sqrt(2.0), 2 * kH);
    try {
        amalgam_norm_discrete(interval(kBox, 0, 1), constant(2.0), 1.0, kH / 2);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "cube below resolution");
    }
}

TEST(Fofana, CoincidesWithLebesgue)
{
    RGrid rg = RGrid::standard(kBox);
    for (double a : {2.0, 3.0}) {
        SpaceParams sp(constant(a), kInfinity, a);
        for (auto f : {bump(kBox, Point{}, 1.0), bump(kBox, Point{}, 2.5, 0.3)}) {
            double lux = luxemburg_norm(f, sp.p()).norm;
            EXPECT_NEAR(fofana_norm_continuous(f, sp, rg).norm, lux, 3 * kH * lux);
        }
    }
}

TEST(Fofana, ZeroFunction)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(kBox);
    EXPECT_EQ(fofana_norm_continuous(GridFunction(kBox), sp, rg).norm, 0.0);
    EXPECT_EQ(fofana_norm_discrete(GridFunction(kBox), sp, rg).norm, 0.0);
}

TEST(Fofana, DenseScanReference)
{
    // 400-radius brute-force scan for chi_B(0,1), p = 2, alpha = 3, q = 6 at N = 128.
    const double ref = 1.13338541020024;
    const double L = 4.0;
    Box b(1, L, 128);
    auto radii = oracle::log_radii(b.spacing(), 2 * L, 400);
    auto fv = oracle::sample(L, 128, [](double x) { return oracle::in_ball(x, 1.0) ? 1.0 : 0.0; });
    EXPECT_NEAR(oracle::fofana(fv, L, 2.0, 6.0, 3.0, radii), ref, 1e-12);
    SpaceParams sp(ExponentField::constant(b, 2.0), 6.0, 3.0);
    GridFunction f(b, fv);
    EXPECT_NEAR(fofana_norm_continuous(f, sp, RGrid(radii)).norm, ref, 1e-12);
    // The default 40-radius grid sits within 1% of the dense scan.
    double coarse = fofana_norm_continuous(f, sp, RGrid::standard(b)).norm;
    EXPECT_LE(coarse, ref + 1e-12);
    EXPECT_GE(coarse, 0.99 * ref);
}

TEST(Fofana, ScaleNormFields)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(kBox);
    auto chi = make_indicator(BallSpec{Point{}, 1.0}, kBox);
    ScaleNorm s = fofana_norm_continuous(chi, sp, rg);
    ASSERT_EQ(s.per_r.size(), rg.size());
    EXPECT_EQ(*std::max_element(s.per_r.begin(), s.per_r.end()), s.norm);
    EXPECT_TRUE(s.nontrivial);
    EXPECT_FALSE(fofana_norm_continuous(chi, SpaceParams(constant(2.0), 6.0, 8.0), rg).nontrivial);
}

TEST(FofanaDiscrete, WeightExponent)
{
    auto p = ExponentField::from(kBox, [](const Point& x) { return x[0] < 0 ? 2.0 : 3.0; });
    SpaceParams sp(p, 6.0, 3.0);
    auto chi = interval(kBox, -1, 1);
    for (double r : {0.5, 2.0}) {
        double term = fofana_discrete_term(chi, sp, r);
        double expect = std::pow(r, 1.0 / 3.0 - n_rp(r, p)) * amalgam_norm_discrete(chi, p, 6.0, r);
        EXPECT_NEAR(term, expect, 1e-13 * expect);
    }
}

TEST(FofanaDiscrete, EquivalentToContinuous)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(kBox);
    double lo = 1e9, hi = 0;
    for (const auto& nf : harness::standard_family(kBox, 7)) {
        double r = fofana_norm_discrete(nf.f, sp, rg).norm / fofana_norm_continuous(nf.f, sp, rg).norm;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    EXPECT_GT(lo, 0.5);
    EXPECT_LT(hi, 2.0);
}

TEST(Fofana, TriangleInequality)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(kBox);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        auto f = harness::random_piecewise(kBox, rng, 1 + k % 13, 0.5 + 0.03 * k, -1, 1);
        auto g = bump(kBox, Point{}, 0.2 + 0.02 * k, k % 2 ? 1.0 : -0.5);
        double lhs = fofana_norm_continuous(f + g, sp, rg).norm;
        double rhs = fofana_norm_continuous(f, sp, rg).norm + fofana_norm_continuous(g, sp, rg).norm;
        EXPECT_LE(lhs, rhs + 1e-9);
    }
}

TEST(Bmo, Examples)
{
    RGrid rg = RGrid::standard(kBox);
    EXPECT_EQ(bmo_seminorm(GridFunction::from(kBox, [](const Point&) { return 2.5; }), rg).value, 0.0);
    double v = bmo_seminorm(interval(kBox, 0, 1), rg).value;
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
}

TEST(Bmo, ExhaustiveReference)
{
    // Every cell center as ball center, at N = 128.
    const double ref40 = 0.499479708636837, ref400 = 0.499540863177227;
    const double L = 4.0;
    Box b(1, L, 128);
    auto bv = oracle::sample(L, 128, [](double x) { return x >= 0 && x < 1 ? 1.0 : 0.0; });
    auto r40 = oracle::log_radii(b.spacing(), 2 * L, 40), r400 = oracle::log_radii(b.spacing(), 2 * L, 400);
    EXPECT_NEAR(oracle::bmo(bv, L, r40), ref40, 1e-12);
    EXPECT_NEAR(oracle::bmo(bv, L, r400), ref400, 1e-12);
    GridFunction f(b, bv);
    EXPECT_NEAR(bmo_seminorm(f, RGrid::standard(b)).value, ref40, 1e-12);
    EXPECT_NEAR(bmo_seminorm(f, RGrid(r400)).value, ref400, 1e-12);
}

TEST(Bmo, DilationStability)
{
    RGrid rg = RGrid::standard(kBox);
    double a = bmo_seminorm(harness::clamped_log(kBox), rg).value;
    double b = bmo_seminorm(harness::clamped_log(kBox, 2.0), rg).value;
    EXPECT_NEAR(b / a, 1.0, 0.2);
}

TEST(Bmo, MeansAndOscillation)
{
    auto chi = interval(kBox, 0, 1);
    Point c{};
    c[0] = 0.5;
    EXPECT_NEAR(*ball_mean(chi, c, 0.25), 1.0, 1e-15);
    EXPECT_NEAR(*mean_oscillation(chi, c, 0.25), 0.0, 1e-15);
    c[0] = 0.0;
    EXPECT_NEAR(*mean_oscillation(chi, c, 0.5), 0.5, 1e-12);
    c[0] = 40.0;
    EXPECT_FALSE(ball_mean(chi, c, 1.0).has_value());
}

TEST(Embedding, Examples)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(kBox);
    auto e = embedding_check(make_indicator(BallSpec{Point{}, 1.0}, kBox), sp, rg);
    EXPECT_TRUE(e.holds());
    EXPECT_NEAR(e.constant, std::pow(2.0, 0.5 + 1.0 / 6.0 - 1.0 / 3.0), 1e-14);
    auto z = embedding_check(GridFunction(kBox), sp, rg);
    EXPECT_EQ(z.lhs, 0.0);
    EXPECT_EQ(z.rhs, 0.0);
    try {
        embedding_check(bump(kBox, Point{}, 1.0), SpaceParams(constant(2.0), 6.0, 1.5), rg);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("parameter ordering violated"), std::string::npos);
    }
}

TEST(Embedding, RandomBumpSums)
{
    SpaceParams sp(constant(2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(kBox);
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> c(-2, 2), r(0.1, 1.5), a(-1, 1);
    for (int k = 0; k < 50; ++k) {
        GridFunction f(kBox);
        for (int j = 0; j < 1 + k % 4; ++j) {
            Point x{};
            x[0] = c(rng);
            double rad = r(rng), amp = a(rng);
            f += bump(kBox, x, rad, amp);
        }
        EXPECT_TRUE(embedding_check(f, sp, rg).holds());
    }
}

TEST(Triviality, AlphaBelowPMinus)
{
    TrivialityCurve tc = triviality_probe(SpaceParams(constant(2.0), 6.0, 1.5), RGrid::standard(kBox));
    EXPECT_EQ(tc.verdict, BlowUp::large_r);
    EXPECT_NEAR(tc.slope_large, 1 / 1.5 - 0.5, 0.05);
    EXPECT_STREQ(to_string(tc.verdict), "blow-up at large r");
}

TEST(Triviality, AlphaAboveQ)
{
    TrivialityCurve tc = triviality_probe(SpaceParams(constant(2.0), 6.0, 8.0), RGrid::standard(kBox));
    EXPECT_EQ(tc.verdict, BlowUp::small_r);
    // Larger at the smallest radius than at r = 1.
    std::size_t one = 0;
    for (std::size_t k = 0; k < tc.r.size(); ++k)
        if (std::abs(std::log(tc.r[k])) < std::abs(std::log(tc.r[one]))) one = k;
    EXPECT_GT(tc.value.front(), tc.value[one]);
}

TEST(Triviality, NontrivialBounded)
{
    TrivialityCurve tc = triviality_probe(SpaceParams(constant(2.0), 6.0, 3.0), RGrid::standard(kBox));
    EXPECT_EQ(tc.verdict, BlowUp::bounded);
    EXPECT_LT(*std::max_element(tc.value.begin(), tc.value.end()), 2.0);
}

TEST(Slope, LogLogFit)
{
    std::vector<double> x = {1, 2, 4, 8}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -0.7));
    EXPECT_NEAR(loglog_slope(x, y), -0.7, 1e-12);
    EXPECT_TRUE(std::isnan(loglog_slope({1.0}, {2.0})));
}

TEST(TwoDimensional, Smoke)
{
    Box b(2, 2.0, 64);
    auto chi = make_indicator(BallSpec{Point{}, 1.0}, b);
    SpaceParams sp(ExponentField::constant(b, 2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(b, 20);
    double lux = luxemburg_norm(chi, sp.p()).norm;
    EXPECT_NEAR(lux, std::sqrt(M_PI), 0.05);
    double c = fofana_norm_continuous(chi, sp, rg).norm, d = fofana_norm_discrete(chi, sp, rg).norm;
    EXPECT_GT(c, 0.0);
    EXPECT_GT(d / c, 0.25);
    EXPECT_LT(d / c, 4.0);
    EXPECT_TRUE(embedding_check(chi, sp, rg).holds());
}
