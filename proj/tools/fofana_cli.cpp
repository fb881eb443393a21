// Command-line front end: norms, operators, verification suites, probes and
// pre-dual decompositions. Exit codes: 0 success, 1 a hard assertion failed,
// 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fofana/harness/suites.hpp"
#include "fofana/io.hpp"
#include "fofana/operators.hpp"
#include "fofana/parallel.hpp"
#include "fofana/predual.hpp"
#include "fofana/spaces.hpp"
#include "fofana/varnorm.hpp"

namespace fs = std::filesystem;
using namespace fofana;
using harness::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 7;
    std::string out = ".";
    int n = 1;
    double L = 4.0;
    int N = 512;
    int r_points = 40;
    unsigned threads = 0;
};

double parse_index(const std::string& s)
{
    if (s == "inf" || s == "infinity" || s == "Inf") return kInfinity;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ExponentField load_exponent(const Box& box, const std::string& p_file, const std::string& p_const)
{
    if (!p_file.empty()) {
        ExponentField p = read_exponent(p_file);
        if (!(p.box().dim() == box.dim() && p.box().points_per_axis() == box.points_per_axis() &&
              p.box().half_width() == box.half_width()))
            throw UsageError("exponent grid does not match the function grid");
        return p;
    }
    return ExponentField::constant(box, parse_index(p_const));
}

void write_json(const fs::path& path, const json& j)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Norms and operators on variable-exponent Fofana spaces"};
    app.set_config("--config", "", "INI/TOML file with flag values");
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "seed for generated cases");
    app.add_option("--out", g.out, "output directory for reports and manifests");
    app.add_option("--n", g.n, "dimension for generated grids")->check(CLI::Range(1, 3));
    app.add_option("--L", g.L, "box half-width for generated grids")->check(CLI::PositiveNumber);
    app.add_option("--N", g.N, "points per axis for generated grids")->check(CLI::Range(8, 1 << 20));
    app.add_option("--r-points", g.r_points, "radii in the default radius grid")->check(CLI::Range(2, 100000));
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");

    // norm
    auto* norm = app.add_subcommand("norm", "compute a norm of a function file");
    std::string norm_kind = "lux", p_file, p_const = "2", q_str = "inf", alpha_str = "inf", f_file;
    double radius = 1.0;
    norm->add_option("--kind", norm_kind, "lux|amalgam|amalgam-discrete|fofana|fofana-discrete|bmo")
        ->check(CLI::IsMember({"lux", "amalgam", "amalgam-discrete", "fofana", "fofana-discrete", "bmo"}));
    norm->add_option("--p-file", p_file, "exponent field file")->check(CLI::ExistingFile);
    norm->add_option("--p", p_const, "constant exponent (when no --p-file)");
    norm->add_option("--q", q_str, "outer index, 'inf' allowed");
    norm->add_option("--alpha", alpha_str, "scale index, 'inf' allowed");
    norm->add_option("--r", radius, "cube side for amalgam-discrete")->check(CLI::PositiveNumber);
    norm->add_option("file", f_file, "function file")->check(CLI::ExistingFile)->required();

    // op
    auto* op = app.add_subcommand("op", "apply an operator and write the result");
    std::string op_kind, op_in, op_out, b_file;
    double op_r = 1.0, op_alpha = 1.0, op_t = 1.0, gamma = 0.5;
    std::string rule = "cell-average";
    op->add_option("--kind", op_kind, "dilate|scale|maximal|frac|commutator")
        ->required()
        ->check(CLI::IsMember({"dilate", "scale", "maximal", "frac", "commutator"}));
    op->add_option("--r", op_r, "dilation factor")->check(CLI::PositiveNumber);
    op->add_option("--alpha", op_alpha, "dilation index");
    op->add_option("--t", op_t, "argument scale")->check(CLI::PositiveNumber);
    op->add_option("--gamma", gamma, "fractional order");
    op->add_option("--diagonal", rule, "cell-average|exclude-self-cell")
        ->check(CLI::IsMember({"cell-average", "exclude-self-cell"}));
    op->add_option("--b-file", b_file, "symbol b for the commutator")->check(CLI::ExistingFile);
    op->add_option("file", op_in, "input function file")->check(CLI::ExistingFile)->required();
    op->add_option("-o,--output", op_out, "output function file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int cases = 0;
    std::vector<std::string> tol_kv;
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    verify->add_option("--cases", cases, "case count (0 = suite default)");
    verify->add_option("--tol", tol_kv, "tolerance override key=value (repeatable)");

    // probe
    auto* probe = app.add_subcommand("probe", "run a scaling probe and print its table");
    std::string probe_kind;
    double pr_p = 2.0, pr_q = 6.0, pr_alpha = 3.0, pr_gamma = 0.25, pr_beta = 0.0;
    probe->add_option("kind", probe_kind, "triviality|necessity|scaling|sufficiency|kernel-identity")
        ->required()
        ->check(CLI::IsMember({"triviality", "necessity", "scaling", "sufficiency", "kernel-identity"}));
    probe->add_option("--p", pr_p, "constant exponent");
    probe->add_option("--q", pr_q, "outer index");
    probe->add_option("--alpha", pr_alpha, "scale index");
    probe->add_option("--gamma", pr_gamma, "fractional order");
    probe->add_option("--beta", pr_beta, "target scale index for necessity (0 = matched)");

    // decompose
    auto* dec = app.add_subcommand("decompose", "upper H bound and a one-block decomposition");
    std::string d_file, d_p_file, d_p = "2", d_q = "2", d_alpha = "2";
    dec->add_option("--p-file", d_p_file, "exponent field file (pre-dual exponent)")->check(CLI::ExistingFile);
    dec->add_option("--p", d_p, "constant pre-dual exponent");
    dec->add_option("--q", d_q, "pre-dual outer index");
    dec->add_option("--alpha", d_alpha, "pre-dual scale index");
    dec->add_option("file", d_file, "function file")->check(CLI::ExistingFile)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (g.threads > 0) set_worker_count(g.threads);

    try {
        if (*norm) {
            GridFunction f = read_function(f_file);
            const Box& box = f.box();
            ExponentField p = load_exponent(box, p_file, p_const);
            const double q = parse_index(q_str), alpha = parse_index(alpha_str);
            const RGrid rg = RGrid::standard(box, g.r_points);
            if (norm_kind == "lux") {
                auto r = luxemburg_norm(f, p);
                std::cout << "norm " << fmt(r.norm) << "\nmodular " << fmt(r.modular_at_norm) << '\n';
            } else if (norm_kind == "amalgam") {
                std::cout << "norm " << fmt(amalgam_norm_continuous(f, p, q)) << '\n';
            } else if (norm_kind == "amalgam-discrete") {
                std::cout << "norm " << fmt(amalgam_norm_discrete(f, p, q, radius)) << '\n';
            } else if (norm_kind == "bmo") {
                BmoResult b = bmo_seminorm(f, rg);
                std::cout << "norm " << fmt(b.value) << "\nradius " << fmt(b.radius) << '\n';
            } else {
                SpaceParams sp(p, q, alpha);
                if (!sp.nontrivial())
                    std::cerr << "warning: parameters give a trivial space (" << to_string(sp.triviality()) << ")\n";
                ScaleNorm s = norm_kind == "fofana" ? fofana_norm_continuous(f, sp, rg) : fofana_norm_discrete(f, sp, rg);
                std::cout << "norm " << fmt(s.norm) << "\nargmax_r " << fmt(s.argmax_r) << '\n';
            }
            return 0;
        }
        if (*op) {
            GridFunction f = read_function(op_in);
            GridFunction out(f.box());
            const KernelPlan kp(gamma, rule == "cell-average" ? DiagonalRule::cell_average
                                                              : DiagonalRule::exclude_self_cell);
            if (op_kind == "dilate") {
                out = dilate(f, DilationParams(op_r, op_alpha));
            } else if (op_kind == "scale") {
                out = scale_argument(f, op_t);
            } else if (op_kind == "maximal") {
                out = maximal_function(f, RGrid::standard(f.box(), g.r_points));
            } else if (op_kind == "frac") {
                out = frac_integral(f, kp);
            } else {
                if (b_file.empty()) throw UsageError("commutator needs --b-file");
                out = commutator(read_function(b_file), f, kp);
            }
            write_function(op_out, out);
            return 0;
        }
        if (*verify) {
            std::vector<std::string> names = suite == "all" ? harness::suite_names() : std::vector<std::string>{suite};
            std::map<std::string, double> tols;
            for (const auto& kv : tol_kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw UsageError("--tol expects key=value, got '" + kv + "'");
                tols[kv.substr(0, eq)] = parse_index(kv.substr(eq + 1));
            }
            std::vector<harness::VerificationReport> reports;
            for (const auto& name : names) {
                harness::SuiteSpec spec;
                spec.name = name;
                spec.seed = g.seed;
                spec.case_count = cases;
                spec.tolerances = tols;
                spec.dim = g.n;
                spec.half_width = g.L;
                spec.points_per_axis = g.N;
                spec.r_points = g.r_points;
                try {
                    reports.push_back(harness::run_suite(spec));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                const auto& r = reports.back();
                write_json(fs::path(g.out) / (name + ".json"), harness::to_json(r));
                std::cout << name << ": " << (r.passed() ? "pass" : "fail") << " (" << r.cases.size() << " cases, "
                          << r.slopes.size() << " slopes, " << r.violations() << " violations)";
                if (!r.passed()) std::cout << " first violation: " << r.first_violation();
                std::cout << '\n';
            }
            std::ofstream csv(fs::path(g.out) / "margins.csv");
            harness::write_margin_csv(csv, reports);
            for (const auto& r : reports)
                if (!r.passed()) return 1;
            return 0;
        }
        if (*probe) {
            const Box box(g.n, g.L, g.N);
            const RGrid rg = RGrid::standard(box, g.r_points);
            SpaceParams sp(ExponentField::constant(box, pr_p), pr_q, pr_alpha);
            json j{{"kind", probe_kind}, {"p", pr_p}, {"q", pr_q}, {"alpha", pr_alpha}};
            bool ok = true;
            const std::vector<double> ts = {1.0, 2.0, 4.0, 8.0};
            auto print_probe = [&](const harness::ProbeResult& pr) {
                std::cout << "t,norm\n";
                for (std::size_t k = 0; k < pr.t_values.size(); ++k)
                    std::cout << fmt(pr.t_values[k]) << ',' << fmt(pr.lhs_norms[k]) << '\n';
                std::cout << "slope " << fmt(pr.fitted_slope) << " expected " << fmt(pr.expected_slope) << " "
                          << (pr.verdict() ? "pass" : "fail") << '\n';
                j["t"] = pr.t_values;
                j["norms"] = pr.lhs_norms;
                j["fitted_slope"] = pr.fitted_slope;
                j["expected_slope"] = pr.expected_slope;
                ok = pr.verdict();
            };
            if (probe_kind == "triviality") {
                TrivialityCurve tc = triviality_probe(sp, rg);
                std::cout << "r,value\n";
                for (std::size_t k = 0; k < tc.r.size(); ++k) std::cout << fmt(tc.r[k]) << ',' << fmt(tc.value[k]) << '\n';
                std::cout << "verdict " << to_string(tc.verdict) << '\n';
                j["r"] = tc.r;
                j["value"] = tc.value;
                j["verdict"] = to_string(tc.verdict);
            } else if (probe_kind == "necessity") {
                const double beta = pr_beta > 0.0 ? pr_beta : 1.0 / (1.0 / pr_alpha - pr_gamma / g.n);
                GridFunction f = harness::bump(box, Point{}, 0.5 * g.L);
                print_probe(harness::frac_necessity_probe(f, sp, pr_gamma, beta, ts, rg));
            } else if (probe_kind == "scaling") {
                GridFunction f = harness::bump(box, Point{}, 0.1 * g.L);
                print_probe(harness::dilation_scaling_probe(f, sp, ts, rg, g.n / pr_alpha));
            } else if (probe_kind == "sufficiency") {
                auto tab = harness::frac_sufficiency_probe(sp, pr_gamma, harness::smooth_family(box), ts, rg);
                std::cout << "t,max_ratio\n";
                for (std::size_t k = 0; k < tab.t_values.size(); ++k)
                    std::cout << fmt(tab.t_values[k]) << ',' << fmt(tab.max_ratio_by_t[k]) << '\n';
                std::cout << "spread " << fmt(tab.spread) << '\n';
                j["t"] = tab.t_values;
                j["max_ratio_by_t"] = tab.max_ratio_by_t;
                j["spread"] = tab.spread;
                ok = tab.spread <= 0.25;
            } else {
                GridFunction f = harness::bump(box, Point{}, 0.5 * g.L);
                std::cout << "t,deviation\n";
                for (double t : {0.5, 2.0, 4.0}) {
                    double dev = harness::kernel_identity_deviation(f, pr_gamma, t);
                    std::cout << fmt(t) << ',' << fmt(dev) << '\n';
                    j["deviation"].push_back({{"t", t}, {"value", dev}});
                }
            }
            write_json(fs::path(g.out) / ("probe-" + probe_kind + ".json"), j);
            return ok ? 0 : 1;
        }
        if (*dec) {
            GridFunction f = read_function(d_file);
            if (f.is_zero()) throw UsageError("cannot decompose the zero function");
            SpaceParams hp(load_exponent(f.box(), d_p_file, d_p), parse_index(d_q), parse_index(d_alpha));
            HBound hb = h_norm_upper_bound(f, hp, RGrid::standard(f.box(), g.r_points));
            write_manifest(hb.decomposition, g.out);
            std::cout << "bound " << fmt(hb.bound) << "\nbest_r " << fmt(hb.best_r) << "\nmanifest "
                      << (fs::path(g.out) / "manifest.csv").string() << '\n';
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
