// Norms of a ball indicator: Luxemburg, amalgam, Fofana (both forms), BMO.
#include <cstdio>

#include "fofana/spaces.hpp"
#include "fofana/varnorm.hpp"

using namespace fofana;

int main()
{
    Box box(1, 4.0, 512);
    GridFunction chi = make_indicator(BallSpec{Point{}, 1.0}, box);
    ExponentField p = ExponentField::constant(box, 2.0);
    SpaceParams sp(p, 6.0, 3.0);
    RGrid rg = RGrid::standard(box);

    std::printf("||chi||_2            = %.6f\n", luxemburg_norm(chi, p).norm);
    std::printf("amalgam (q=6)        = %.6f\n", amalgam_norm_continuous(chi, p, 6.0));
    ScaleNorm c = fofana_norm_continuous(chi, sp, rg);
    ScaleNorm d = fofana_norm_discrete(chi, sp, rg);
    std::printf("Fofana continuous    = %.6f at r = %.4f\n", c.norm, c.argmax_r);
    std::printf("Fofana discrete      = %.6f at r = %.4f\n", d.norm, d.argmax_r);
    std::printf("||chi||_*            = %.6f\n", bmo_seminorm(chi, rg).value);

    // A variable exponent between 1.5 and 2.5.
    ExponentField pv = ExponentField::from(box, [](const Point& x) { return x[0] < 0.0 ? 1.5 : 2.5; });
    std::printf("||chi||_p(.)         = %.6f (r_p = %.4f)\n", luxemburg_norm(chi, pv).norm, holder_constant(pv));
    std::printf("nontrivial(p,6,3)    = %s\n", to_string(SpaceParams(pv, 6.0, 3.0).triviality()));
    return 0;
}
