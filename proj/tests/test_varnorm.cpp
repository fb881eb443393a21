#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fofana/varnorm.hpp"
#include "oracles.hpp"

using namespace fofana;

namespace {

const Box kBox(1, 4.0, 512);
const double kH = kBox.spacing();

GridFunction unit_interval(double height = 1.0)
{
    return GridFunction::from(kBox, [&](const Point& x) { return x[0] >= 0 && x[0] < 1 ? height : 0.0; });
}

ExponentField two_three()
{
    // p = 2 on [0, 1/2), 3 elsewhere.
    return ExponentField::from(kBox, [](const Point& x) { return x[0] < 0.5 ? 2.0 : 3.0; });
}

GridFunction random_field(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> pieces(1, 40);
    int k = pieces(rng);
    std::vector<double> v(k);
    for (auto& x : v) x = u(rng);
    return GridFunction::from(kBox, [&](const Point& x) {
        double t = (x[0] + 3.0) / 6.0;
        return t < 0 || t >= 1 ? 0.0 : v[static_cast<int>(t * k)];
    });
}

} // namespace

TEST(Modular, Examples)
{
    auto chi = unit_interval();
    EXPECT_NEAR(modular(chi, ExponentField::constant(kBox, 2.0), 1.0), 1.0, kH);
    EXPECT_NEAR(modular(chi, two_three(), 1.0), 1.0, kH);
    EXPECT_NEAR(modular(unit_interval(2.0), ExponentField::constant(kBox, 2.0), 2.0), 1.0, kH);
}

TEST(Modular, Errors)
{
    auto chi = unit_interval();
    EXPECT_THROW(modular(chi, ExponentField::constant(kBox, 2.0), 0.0), std::invalid_argument);
    EXPECT_THROW(modular(chi, ExponentField::constant(Box(1, 4.0, 256), 2.0), 1.0), std::invalid_argument);
}

TEST(Modular, StrictlyDecreasing)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lam(0.01, 10.0);
    auto f = random_field(rng);
    auto p = two_three();
    for (int k = 0; k < 100; ++k) {
        double a = lam(rng), b = lam(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-6) continue;
        EXPECT_GT(modular(f, p, a), modular(f, p, b));
    }
}

TEST(Luxemburg, Examples)
{
    auto r = luxemburg_norm(unit_interval(), ExponentField::constant(kBox, 2.0));
    EXPECT_NEAR(r.norm, 1.0, kH);
    EXPECT_NEAR(luxemburg_norm(unit_interval(2.0), two_three()).norm, 2.0, kH);
    auto x = GridFunction::from(kBox, [](const Point& p) { return p[0] >= 0 && p[0] < 1 ? p[0] : 0.0; });
    EXPECT_NEAR(luxemburg_norm(x, ExponentField::constant(kBox, 2.0)).norm, std::sqrt(1.0 / 3.0), 2 * kH);
}

TEST(Luxemburg, ModularResidual)
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 30; ++k) {
        auto f = random_field(rng);
        auto r = luxemburg_norm(f, two_three());
        if (f.is_zero()) continue;
        EXPECT_LE(std::abs(r.modular_at_norm - 1.0), kModularTolerance);
        EXPECT_LE(std::abs(modular(f, two_three(), r.norm) - 1.0), kModularTolerance);
    }
}

TEST(Luxemburg, ZeroFunction)
{
    auto r = luxemburg_norm(GridFunction(kBox), two_three());
    EXPECT_EQ(r.norm, 0.0);
}

TEST(Luxemburg, ConstantExponentClosedForm)
{
    std::mt19937_64 rng(2);
    for (double p0 : {1.1, 1.5, 2.0, 3.7, 12.0}) {
        auto f = random_field(rng);
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p0);
        double exact = std::pow(kH * s, 1.0 / p0);
        EXPECT_NEAR(luxemburg_norm(f, ExponentField::constant(kBox, p0)).norm, exact, 1e-10 * exact);
    }
}

TEST(Luxemburg, Homogeneity)
{
    std::mt19937_64 rng(4);
    auto p = two_three();
    for (double c : {1e-6, 0.3, 1.0, 7.0, 1e5}) {
        auto f = random_field(rng);
        double a = luxemburg_norm(c * f, p).norm, b = c * luxemburg_norm(f, p).norm;
        EXPECT_NEAR(a, b, 1e-8 * b);
    }
}

TEST(Luxemburg, Monotone)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    auto p = ExponentField::from(kBox, [](const Point& x) { return 1.5 + 2.5 / (1 + x[0] * x[0]); });
    for (int k = 0; k < 30; ++k) {
        auto g = random_field(rng);
        auto f = GridFunction::from(kBox, [&](const Point&) { return u(rng); });
        // |f| <= |g| pointwise.
        std::vector<double> v(f.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
        EXPECT_LE(luxemburg_norm(GridFunction(kBox, v), p).norm, luxemburg_norm(g, p).norm + 1e-10);
    }
}

TEST(Conjugate, Examples)
{
    auto c2 = conjugate(ExponentField::constant(kBox, 2.0));
    EXPECT_DOUBLE_EQ(c2.p_minus(), 2.0);
    EXPECT_DOUBLE_EQ(c2.p_plus(), 2.0);
    auto c3 = conjugate(ExponentField::constant(kBox, 3.0));
    EXPECT_DOUBLE_EQ(c3.p_plus(), 1.5);
    auto c23 = conjugate(two_three());
    EXPECT_DOUBLE_EQ(c23.p_plus(), 2.0);
    EXPECT_DOUBLE_EQ(c23.p_minus(), 1.5);
    auto back = conjugate(c23);
    for (std::size_t i = 0; i < kBox.cell_count(); ++i) EXPECT_NEAR(back[i], two_three()[i], 1e-14);
}

TEST(HolderConstant, Examples)
{
    EXPECT_DOUBLE_EQ(holder_constant(ExponentField::constant(kBox, 2.0)), 1.0);
    EXPECT_NEAR(holder_constant(two_three()), 7.0 / 6.0, 1e-15);
    EXPECT_DOUBLE_EQ(holder_constant(ExponentField::constant(kBox, 3.3)), 1.0);
}

TEST(HolderPairing, Examples)
{
    auto chi = unit_interval();
    auto c = holder_pairing_check(chi, chi, ExponentField::constant(kBox, 2.0));
    EXPECT_NEAR(c.lhs, 1.0, 2 * kH);
    EXPECT_NEAR(c.rhs, 1.0, 2 * kH);
    EXPECT_TRUE(c.holds());
    auto z = holder_pairing_check(chi, GridFunction(kBox), two_three());
    EXPECT_EQ(z.lhs, 0.0);
    EXPECT_EQ(z.rhs, 0.0);
}

TEST(HolderPairing, RandomPairs)
{
    std::mt19937_64 rng(7);
    auto p = ExponentField::from(kBox, [](const Point& x) { return x[0] < -1 ? 1.5 : (x[0] < 1 ? 4.0 : 2.2); });
    for (int k = 0; k < 200; ++k) {
        auto f = random_field(rng), g = random_field(rng);
        EXPECT_TRUE(holder_pairing_check(f, g, p).holds());
    }
}

TEST(LogHolder, ConstantIsZero)
{
    auto r = log_holder_check(ExponentField::constant(kBox, 2.5), 1000);
    EXPECT_EQ(r.c_local, 0.0);
    EXPECT_EQ(r.c_decay, 0.0);
}

TEST(LogHolder, LipschitzMatchesExhaustiveScan)
{
    // All pairs on N = 64, from the brute-force scan.
    const double c_local = 0.367810969879397, c_decay = 0.958811363833627;
    Box b(1, 4.0, 64);
    auto pv = oracle::sample(4.0, 64, [](double x) { return 2 + std::min(1.0, std::abs(x)); });
    auto ref = oracle::log_holder(pv, 4.0);
    EXPECT_NEAR(ref.first, c_local, 1e-13);
    EXPECT_NEAR(ref.second, c_decay, 1e-13);
    auto r = log_holder_check(ExponentField(b, pv), 500);
    EXPECT_NEAR(r.c_local, c_local, 1e-13);
    EXPECT_NEAR(r.c_decay, c_decay, 1e-13);
}

TEST(LogHolder, JumpGrowsLikeMinusLogH)
{
    double prev = 0.0;
    for (int N : {128, 256, 512, 1024}) {
        Box b(1, 4.0, N);
        auto p = ExponentField::from(b, [](const Point& x) { return x[0] < 0.3 ? 2.0 : 3.0; });
        double c = log_holder_check(p, 2000).c_local;
        EXPECT_NEAR(c, -std::log(b.spacing()), 1e-12);
        if (prev > 0) EXPECT_NEAR(c - prev, std::log(2.0), 1e-12);
        prev = c;
    }
}

TEST(LogHolder, MonotoneInBudget)
{
    auto p = ExponentField::from(kBox, [](const Point& x) { return 2 + std::sin(3 * x[0]) / (1 + x[0] * x[0]); });
    double prev_l = 0, prev_d = 0;
    for (std::size_t budget : {1, 10, 100, 1000, 10000}) {
        auto r = log_holder_check(p, budget);
        EXPECT_GE(r.c_local, prev_l);
        EXPECT_GE(r.c_decay, prev_d);
        prev_l = r.c_local;
        prev_d = r.c_decay;
    }
}

TEST(LebesgueDifferentiation, ShrinkingBalls)
{
    // ||f chi_B|| / ||chi_B|| -> |f(x)| with error O(r).
    auto f = GridFunction::from(kBox, [](const Point& x) { return std::cos(x[0]) + 0.2 * x[0]; });
    auto p = ExponentField::from(kBox, [](const Point& x) { return 1.5 + 1.0 / (1 + x[0] * x[0]); });
    double fitted_c = 0.0;
    for (long i : {100L, 256L, 300L, 411L}) {
        Point x{};
        x[0] = kBox.coord(i);
        for (int m : {16, 8, 4}) {
            double r = m * kH;
            auto chi = make_indicator(BallSpec{x, r}, kBox);
            double ratio = luxemburg_norm(f * chi, p).norm / luxemburg_norm(chi, p).norm;
            double dev = std::abs(ratio - std::abs(f[i]));
            fitted_c = std::max(fitted_c, dev / r);
        }
    }
    // |f'| <= 1.2, so the deviation is bounded by about Lip(f) r.
    EXPECT_LE(fitted_c, 1.2);
    RecordProperty("fitted_C", std::to_string(fitted_c));
}
