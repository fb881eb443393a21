// Dilation, maximal function, fractional integral and commutator on a bump.
#include <cmath>
#include <cstdio>

#include "fofana/harness/families.hpp"
#include "fofana/operators.hpp"

using namespace fofana;

int main()
{
    Box box(1, 4.0, 512);
    GridFunction f = harness::bump(box, Point{}, 1.0);
    Point x{};

    GridFunction s = dilate(f, DilationParams(2.0, 3.0));
    std::printf("St_2 f(0) = %.6f (expected 2^(-1/3) = %.6f)\n", point_value(s, x), std::pow(2.0, -1.0 / 3.0));
    GridFunction m = maximal_function(f, RGrid::standard(box));
    std::printf("Mf(0) = %.6f\n", point_value(m, x));

    GridFunction chi = make_indicator(BallSpec{Point{}, 1.0}, box);
    GridFunction I = frac_integral(chi, KernelPlan(0.5));
    x[0] = 2.0;
    std::printf("I_1/2 chi(2) = %.6f (exact %.6f)\n", point_value(I, x), 2.0 * (std::sqrt(3.0) - 1.0));

    GridFunction b = harness::clamped_log(box);
    GridFunction k = commutator(b, f, KernelPlan(0.5));
    std::printf("max |[log|x|, I_1/2] f| = %.6f\n", k.max_abs());
    return 0;
}
