#pragma once

// Block decompositions f = sum_j c_j St_{r_j}^{(A)} f_j of the pre-dual
// H(P, Q, A), one-block upper bounds for its norm, and the pairing
// inequality against the Fofana norm.
//
// Every function here takes the pre-dual parameters (P, Q, A) directly; for a
// Fofana space with parameters sp they are sp.dual() = (p', q', alpha').
// The block norm ||.||_{P,Q} is the unit-cube amalgam norm.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fofana/grid.hpp"
#include "fofana/io.hpp"
#include "fofana/operators.hpp"
#include "fofana/parallel.hpp"
#include "fofana/spaces.hpp"

namespace fofana {

inline constexpr double kBlockNormSlack = 1e-9;
inline constexpr double kReconstructionTolerance = 1e-6;

/// P sampled on another box by nearest cell, clamped at the boundary.
inline ExponentField exponent_on(const ExponentField& p, const Box& box)
{
    if (p.box() == box) return p;
    return ExponentField::from(box, [&](const Point& y) { return p.at(y); });
}

/// ||f||_{P,Q}: l^Q over unit cubes of ||f chi_Q||_{P(.)}, with P carried to f's box.
inline double block_norm(const GridFunction& f, const ExponentField& p, double q)
{
    return amalgam_norm_discrete(f, exponent_on(p, f.box()), q, 1.0);
}

struct Block {
    double c = 0.0;
    double r = 1.0;
    GridFunction f;
};

class BlockDecomposition {
public:
    explicit BlockDecomposition(SpaceParams hp) : hp_(std::move(hp)) {}

    const SpaceParams& params() const { return hp_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }

    /// Adds a block after checking ||f||_{P,Q} <= 1 + 1e-9 and finite c, r.
    void add(Block b)
    {
        if (!std::isfinite(b.c)) throw std::invalid_argument("block coefficient must be finite");
        if (!(b.r > 0.0) || !std::isfinite(b.r)) throw std::invalid_argument("block scale must be positive");
        double nf = block_norm(b.f, hp_.p(), hp_.q());
        if (nf > 1.0 + kBlockNormSlack)
            throw std::invalid_argument("block is not normalized: ||f_j||_{P,Q} = " + std::to_string(nf));
        blocks_.push_back(std::move(b));
    }

    /// Appends the blocks of another decomposition with the same parameters.
    void append(const BlockDecomposition& other)
    {
        for (const Block& b : other.blocks_) blocks_.push_back(b);
    }

    double cost() const
    {
        std::vector<double> c;
        for (const Block& b : blocks_) c.push_back(std::abs(b.c));
        return pairwise_sum(c);
    }

    /// sum_{j < count} c_j St_{r_j}^{(A)} f_j on the target box.
    GridFunction reconstruct(const Box& target, std::size_t count) const
    {
        GridFunction out(target);
        count = std::min(count, blocks_.size());
        for (std::size_t j = 0; j < count; ++j) {
            const Block& b = blocks_[j];
            GridFunction s = dilate_rescaled(b.f, DilationParams(b.r, hp_.alpha()));
            out += b.c * on_box(s, target);
        }
        return out;
    }

    GridFunction reconstruct(const Box& target) const { return reconstruct(target, blocks_.size()); }

    /// max |reconstruct - f| / max |f| (absolute when f = 0).
    double residual(const GridFunction& f) const
    {
        GridFunction d = reconstruct(f.box()) - f;
        double scale = f.max_abs();
        return scale > 0.0 ? d.max_abs() / scale : d.max_abs();
    }

private:
    // A relabeled block lands on the target box up to rounding in L; resample
    // only when the lattices really differ.
    static GridFunction on_box(const GridFunction& s, const Box& target)
    {
        const Box& b = s.box();
        if (b.dim() == target.dim() && b.points_per_axis() == target.points_per_axis() &&
            std::abs(b.half_width() - target.half_width()) <= 1e-12 * target.half_width())
            return GridFunction(target, std::vector<double>(s.samples().begin(), s.samples().end()));
        return GridFunction::from(target, [&](const Point& x) { return sample_linear(s, x); });
    }

    SpaceParams hp_;
    std::vector<Block> blocks_;
};

/// f = ||f|| St_1 (f / ||f||): one block at r = 1. Empty for f = 0.
inline BlockDecomposition single_block_decomposition(const GridFunction& f, const SpaceParams& hp)
{
    require_same_box(f.box(), hp.p().box());
    BlockDecomposition d(hp);
    if (f.is_zero()) return d;
    const double c = block_norm(f, hp.p(), hp.q());
    d.add(Block{c, 1.0, (1.0 / c) * f});
    return d;
}

namespace detail {

// St_{1/r}^{(A)} f on the box [-L/r, L/r]^n, exact.
inline GridFunction undilate(const GridFunction& f, double r, double alpha)
{
    return dilate_rescaled(f, DilationParams(1.0 / r, alpha));
}

} // namespace detail

struct HBound {
    double bound = 0.0;
    double best_r = 1.0;
    BlockDecomposition decomposition;
};

/// min over r in rg and r = 1 of ||St_{1/r}^{(A)} f||_{P,Q}. Each candidate
/// is the one-block decomposition f = c St_r^{(A)} (St_{1/r} f / c); the
/// minimizing one is returned and checked to reconstruct f. Radii whose
/// rescaled cell exceeds the unit cube are skipped.
inline HBound h_norm_upper_bound(const GridFunction& f, const SpaceParams& hp, const RGrid& rg)
{
    require_same_box(f.box(), hp.p().box());
    HBound out{0.0, 1.0, BlockDecomposition(hp)};
    if (f.is_zero()) return out;
    std::vector<double> radii = rg.values();
    if (std::find(radii.begin(), radii.end(), 1.0) == radii.end()) radii.push_back(1.0);
    const double h = f.box().spacing();
    std::vector<double> cost(radii.size(), kInfinity);
    parallel_for(radii.size(), [&](std::size_t k) {
        const double r = radii[k];
        if (h / r > 1.0 * (1.0 + 1e-12)) return;
        cost[k] = block_norm(detail::undilate(f, r, hp.alpha()), hp.p(), hp.q());
    });
    std::size_t best = 0;
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (cost[k] < cost[best] || (cost[k] == cost[best] && radii[k] == 1.0)) best = k;
    const double r = radii[best];
    out.bound = cost[best];
    out.best_r = r;
    GridFunction g = detail::undilate(f, r, hp.alpha());
    out.decomposition.add(Block{out.bound, r, (1.0 / out.bound) * g});
    if (out.decomposition.residual(f) > kReconstructionTolerance)
        throw std::runtime_error("one-block decomposition failed to reconstruct");
    return out;
}

struct DualityCheck {
    double pairing = 0.0;
    double g_norm = 0.0;
    double h_bound = 0.0;
    bool holds(double rel = 1e-6) const { return pairing <= g_norm * h_bound * (1.0 + rel); }
};

/// |int f g| against ||g||_{(p,q)^alpha} times the H(p',q',alpha') bound of
/// f. Both sides are evaluated on rg with r = 1 added, so that every
/// candidate block scale also appears in the sup defining the g norm.
inline DualityCheck duality_pairing_check(const GridFunction& f, const GridFunction& g, const SpaceParams& sp,
                                          const RGrid& rg)
{
    require_same_box(f.box(), g.box());
    require_same_box(f.box(), sp.p().box());
    const RGrid rg1 = with_unit_radius(rg);
    DualityCheck out;
    out.pairing = std::abs(integrate(f * g));
    out.g_norm = fofana_norm_discrete(g, sp, rg1).norm;
    out.h_bound = h_norm_upper_bound(f, sp.dual(), rg1).bound;
    return out;
}

struct TailCurve {
    std::vector<double> tail;           // tail[J] = sum_{j >= J} |c_j|, J = 0..size
    std::vector<double> partial_error;  // max |sum_{j<J} - full|, J = 0..size
};

inline TailCurve tail_convergence_check(const BlockDecomposition& d, const Box& target)
{
    TailCurve out;
    const std::size_t m = d.size();
    out.tail.assign(m + 1, 0.0);
    for (std::size_t j = m; j-- > 0;) out.tail[j] = out.tail[j + 1] + std::abs(d.blocks()[j].c);
    GridFunction full = d.reconstruct(target);
    for (std::size_t j = 0; j <= m; ++j) out.partial_error.push_back((d.reconstruct(target, j) - full).max_abs());
    return out;
}

/// Writes block_<j>.txt files and manifest.csv (columns c, r, path) into dir.
inline void write_manifest(const BlockDecomposition& d, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::ofstream m(dir / "manifest.csv");
    if (!m) throw std::runtime_error("cannot write manifest in " + dir.string());
    m << "c,r,path\n";
    char buf[128];
    for (std::size_t j = 0; j < d.size(); ++j) {
        const Block& b = d.blocks()[j];
        std::string name = "block_" + std::to_string(j) + ".txt";
        write_function((dir / name).string(), b.f);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", b.c, b.r);
        m << buf << name << '\n';
    }
}

/// Reads a manifest written by write_manifest; block paths are relative to it.
inline BlockDecomposition read_manifest(const std::filesystem::path& manifest, const SpaceParams& hp)
{
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open " + manifest.string());
    BlockDecomposition d(hp);
    std::string line;
    std::getline(in, line);
    if (detail::trim(line) != "c,r,path") throw FormatError("manifest header must be 'c,r,path'");
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string c, r, path;
        if (!std::getline(ss, c, ',') || !std::getline(ss, r, ',') || !std::getline(ss, path))
            throw FormatError("malformed manifest row: " + line);
        std::filesystem::path bp = path;
        if (bp.is_relative()) bp = manifest.parent_path() / bp;
        d.add(Block{std::stod(c), std::stod(r), read_function(bp.string())});
    }
    return d;
}

} // namespace fofana
