// Pre-dual bound of a ball indicator and the pairing inequality.
#include <cstdio>

#include "fofana/predual.hpp"

using namespace fofana;

int main()
{
    Box box(1, 4.0, 512);
    SpaceParams sp(ExponentField::constant(box, 2.0), 6.0, 3.0);
    RGrid rg = RGrid::standard(box);
    GridFunction f = make_indicator(BallSpec{Point{}, 0.5}, box);
    GridFunction g = make_indicator(CubeSpec{{0}, 1.0}, box);

    HBound hb = h_norm_upper_bound(f, sp.dual(), rg);
    std::printf("H bound %.6f at r = %.4f, %zu block(s), residual %.2e\n", hb.bound, hb.best_r,
                hb.decomposition.blocks().size(), hb.decomposition.residual(f));
    DualityCheck dc = duality_pairing_check(f, g, sp, rg);
    std::printf("|int fg| = %.6f <= %.6f * %.6f = %.6f : %s\n", dc.pairing, dc.g_norm, dc.h_bound,
                dc.g_norm * dc.h_bound, dc.holds() ? "holds" : "violated");
    return dc.holds() ? 0 : 1;
}
