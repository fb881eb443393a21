#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fofana/io.hpp"

using namespace fofana;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / "fofana_io_test";
    fs::create_directories(dir);
    return dir / name;
}

GridFile parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_grid_file(in);
}

} // namespace

TEST(GridFileIo, RoundTripIsBitExact)
{
    Box box(2, 1.5, 16);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    auto f = GridFunction::from(box, [&](const Point&) { return std::ldexp(u(rng), static_cast<int>(u(rng) * 300)); });
    auto path = scratch("f.txt");
    write_function(path.string(), f);
    auto g = read_function(path.string());
    ASSERT_EQ(g.box(), box);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);
}

TEST(GridFileIo, IndicatorRoundTrip)
{
    Box box(1, 4.0, 512);
    auto chi = make_indicator(BallSpec{Point{}, 1.0}, box);
    auto path = scratch("chi.txt");
    write_function(path.string(), chi);
    auto g = read_function(path.string());
    for (std::size_t i = 0; i < chi.size(); ++i) EXPECT_EQ(chi[i], g[i]);
}

TEST(GridFileIo, ExponentRoundTrip)
{
    Box box(1, 2.0, 32);
    auto p = ExponentField::from(box, [](const Point& x) { return 1.5 + x[0] * x[0] / 7.0; });
    auto path = scratch("p.txt");
    write_exponent(path.string(), p);
    auto q = read_exponent(path.string());
    for (std::size_t i = 0; i < box.cell_count(); ++i) EXPECT_EQ(p[i], q[i]);
    EXPECT_THROW(read_function(path.string()), FormatError);
}

TEST(GridFileIo, RowCountMismatch)
{
    EXPECT_THROW(parse("# dim=1\n# L=1\n# N=8\n1\n2\n3\n"), FormatError);
}

TEST(GridFileIo, NanToken)
{
    std::string text = "# dim=1\n# L=1\n# N=8\n";
    for (int i = 0; i < 7; ++i) text += "0\n";
    text += "NaN\n";
    try {
        parse(text);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("non-finite sample"), std::string::npos);
    }
}

TEST(GridFileIo, MalformedHeader)
{
    EXPECT_THROW(parse("# dim=1\n# N=8\n"), FormatError);
    EXPECT_THROW(parse("# dim=one\n# L=1\n# N=8\n"), FormatError);
    EXPECT_THROW(parse("# dim=1\n# L=1\n# N=8\n# kind=matrix\n0\n0\n0\n0\n0\n0\n0\n0\n"), FormatError);
    EXPECT_THROW(parse("# dim=1\n# L=1\n# N=8\n0\n0\n0\n0\nzero\n0\n0\n0\n"), FormatError);
}

TEST(GridFileIo, TwoDimensionalRowMajor)
{
    std::string text = "# dim=2\n# L=1\n# N=8\n";
    for (int i = 0; i < 64; ++i) text += std::to_string(i) + "\n";
    GridFile g = parse(text);
    EXPECT_EQ(g.box.dim(), 2);
    EXPECT_EQ(g.samples[9], 9.0);
    EXPECT_EQ(g.box.flatten({1, 1, 0}), 9u);
}

TEST(GridFileIo, MissingFile)
{
    EXPECT_THROW(read_function("/nonexistent/f.txt"), std::runtime_error);
}
