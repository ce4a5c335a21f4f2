// mfsb: Stern-Brocot / continued-fraction thermodynamics toolkit.
//
// Subcommands: tree, pressure, spectrum, rates, verify. Everything emits
// plot-ready CSV or JSON; exit codes are 0 success, 1 verification failure,
// 2 usage error, 3 resource cap.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "mfsb/claims.hpp"
#include "mfsb/io.hpp"

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
        os = &file;
    }
};

unsigned env_threads_default() { return 0; } // 0 = resolve from MFSB_THREADS / hardware

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stern-Brocot intervals, continued fractions, pressure functions and spectra"};
    app.require_subcommand(1);

    unsigned threads = env_threads_default();
    app.add_option("--threads", threads, "worker threads (default: MFSB_THREADS or all cores)");

    // --- tree ---------------------------------------------------------------
    auto* tree = app.add_subcommand("tree", "emit a mediant level or its interval partition");
    unsigned tree_depth = 4;
    std::string tree_kind = "intervals";
    std::string tree_out, tree_format = "csv";
    unsigned tree_cap = mfsb::kDefaultDepthCap;
    tree->add_option("--depth", tree_depth, "level order n")->required();
    tree->add_option("--kind", tree_kind, "vertices | intervals")
        ->check(CLI::IsMember({"vertices", "intervals"}));
    tree->add_option("--format", tree_format, "csv")->check(CLI::IsMember({"csv"}));
    tree->add_option("--depth-cap", tree_cap, "enumeration cap override");
    tree->add_option("--out", tree_out, "output path (default stdout)");

    // --- pressure -----------------------------------------------------------
    auto* pressure = app.add_subcommand("pressure", "sample a pressure curve");
    std::string pr_method = "induced-root";
    double pr_tmin = -5.0, pr_tmax = 0.95;
    unsigned pr_steps = 60;
    unsigned pr_level = 18;
    unsigned pr_degree = 32;
    std::uint64_t pr_cap = 0;
    double pr_tol = 1e-12;
    std::string pr_out;
    pressure->add_option("--method", pr_method, "direct-level | induced-root | operator-eig | word-sum")
        ->check(CLI::IsMember({"direct-level", "induced-root", "operator-eig", "word-sum"}));
    pressure->add_option("--theta-min", pr_tmin, "grid start");
    pressure->add_option("--theta-max", pr_tmax, "grid end");
    pressure->add_option("--theta-steps", pr_steps, "grid point count");
    pressure->add_option("--depth", pr_level, "level n (direct-level) or word length k (word-sum)");
    pressure->add_option("--degree", pr_degree, "collocation degree");
    pressure->add_option("--digit-cap", pr_cap, "digit truncation (word-sum; 0 = analytic tails)");
    pressure->add_option("--tol", pr_tol, "root tolerance");
    pressure->add_option("--out", pr_out, "output path (default stdout)");

    // --- spectrum -----------------------------------------------------------
    auto* spectrum = app.add_subcommand("spectrum", "sample a multifractal spectrum");
    std::string sp_kind = "farey-tau";
    double sp_amin = -1.0, sp_amax = -1.0;
    unsigned sp_steps = 202;
    std::string sp_out, sp_format = "csv";
    unsigned sp_degree = 32;
    spectrum->add_option("--kind", sp_kind, "farey-tau | gauss-tauD")
        ->check(CLI::IsMember({"farey-tau", "gauss-tauD"}));
    spectrum->add_option("--alpha-min", sp_amin, "grid start (default: natural endpoint)");
    spectrum->add_option("--alpha-max", sp_amax, "grid end (default: 2 log gamma or 6.0)");
    spectrum->add_option("--alpha-steps", sp_steps, "grid point count");
    spectrum->add_option("--degree", sp_degree, "collocation degree");
    spectrum->add_option("--format", sp_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    spectrum->add_option("--out", sp_out, "output path (default stdout)");

    // --- rates --------------------------------------------------------------
    auto* rates = app.add_subcommand("rates", "growth-rate report or Monte Carlo sweep");
    std::string rt_cf, rt_rational, rt_decimal;
    unsigned rt_repeat = 1;
    std::uint64_t rt_depth = 0;
    bool rt_mc = false;
    std::uint64_t rt_samples = 10000;
    std::uint64_t rt_seed = 1;
    std::string rt_out;
    rates->add_option("--cf", rt_cf, "digit word, comma separated");
    rates->add_option("--repeat", rt_repeat, "repeat the digit word this many times");
    rates->add_option("--rational", rt_rational, "exact rational p/q in (0,1)");
    rates->add_option("--decimal", rt_decimal, "decimal string, certified expansion");
    rates->add_option("--depth", rt_depth, "truncation depth (digit sum; default: whole word)");
    rates->add_flag("--montecarlo", rt_mc, "Levy-constant Monte Carlo (emits CSV)");
    rates->add_option("--samples", rt_samples, "Monte Carlo sample count");
    rates->add_option("--seed", rt_seed, "Monte Carlo master seed");
    rates->add_option("--out", rt_out, "output path (default stdout)");

    // --- verify -------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the desk-checkable claim suite");
    std::string vf_claims;
    std::string vf_budget = "full";
    bool vf_list = false;
    verify->add_option("--claims", vf_claims, "comma-separated claim ids (default: all)");
    verify->add_option("--budget", vf_budget, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    verify->add_flag("--list", vf_list, "list claim ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tree->parsed()) {
            OutputTarget out;
            out.open(tree_out);
            if (tree_kind == "vertices") {
                mfsb::io::write_vertices_csv(*out.os, tree_depth, tree_cap);
            } else {
                mfsb::io::write_intervals_csv(*out.os, tree_depth, tree_cap);
            }
            return 0;
        }

        if (pressure->parsed()) {
            mfsb::PressureParams params;
            params.degree = static_cast<int>(pr_degree);
            params.digit_cap = pr_cap;
            params.root_tol = pr_tol;
            params.threads = threads;
            std::vector<double> grid(pr_steps);
            for (unsigned i = 0; i < pr_steps; ++i) {
                grid[i] = pr_steps == 1
                              ? pr_tmin
                              : pr_tmin + (pr_tmax - pr_tmin) * static_cast<double>(i) /
                                    static_cast<double>(pr_steps - 1);
            }
            mfsb::PressureMethod method = mfsb::PressureMethod::induced_root;
            if (pr_method == "direct-level") method = mfsb::PressureMethod::direct_level;
            else if (pr_method == "operator-eig") method = mfsb::PressureMethod::operator_eig;
            else if (pr_method == "word-sum") method = mfsb::PressureMethod::word_sum;
            const auto curve = mfsb::build_pressure_curve(method, grid, params, pr_level);
            OutputTarget out;
            out.open(pr_out);
            const unsigned n_or_degree =
                method == mfsb::PressureMethod::direct_level || method == mfsb::PressureMethod::word_sum
                    ? pr_level
                    : pr_degree;
            mfsb::io::write_pressure_csv(*out.os, curve, n_or_degree);
            return 0;
        }

        if (spectrum->parsed()) {
            mfsb::PressureParams params;
            params.degree = static_cast<int>(sp_degree);
            params.threads = threads;
            const double a_edge = mfsb::constants().two_log_gamma;
            mfsb::SpectrumKind kind = sp_kind == "farey-tau" ? mfsb::SpectrumKind::farey_tau
                                                             : mfsb::SpectrumKind::gauss_tau_d;
            double lo = sp_amin, hi = sp_amax;
            if (kind == mfsb::SpectrumKind::farey_tau) {
                if (lo < 0.0) lo = 0.0;
                if (hi < 0.0) hi = a_edge;
            } else {
                if (lo < 0.0) lo = a_edge;
                if (hi < 0.0) hi = 6.0;
            }
            const auto curve = kind == mfsb::SpectrumKind::farey_tau
                                   ? mfsb::build_pressure_curve(mfsb::PressureMethod::induced_root,
                                                                mfsb::default_farey_theta_grid(), params)
                                   : mfsb::build_pressure_curve(mfsb::PressureMethod::operator_eig,
                                                                mfsb::default_gauss_theta_grid(), params);
            const auto sc = mfsb::build_spectrum(kind, mfsb::linspace(lo, hi, sp_steps), curve,
                                                 params, true);
            OutputTarget out;
            out.open(sp_out);
            if (sp_format == "json") {
                *out.os << mfsb::io::spectrum_json(sc).dump(2) << "\n";
            } else {
                mfsb::io::write_spectrum_csv(*out.os, sc);
            }
            return 0;
        }

        if (rates->parsed()) {
            OutputTarget out;
            out.open(rt_out);
            if (rt_mc) {
                const auto mc = mfsb::monte_carlo_levy(rt_samples, rt_depth ? rt_depth : 1000,
                                                       rt_seed, threads);
                mfsb::io::write_monte_carlo_csv(*out.os, mc);
                return 0;
            }
            mfsb::RateReport report;
            if (!rt_cf.empty()) {
                mfsb::CFWord base = mfsb::CFWord::parse(rt_cf);
                std::vector<std::uint64_t> digits;
                for (unsigned rep = 0; rep < std::max(1u, rt_repeat); ++rep) {
                    digits.insert(digits.end(), base.digits().begin(), base.digits().end());
                }
                const mfsb::CFWord w(std::move(digits));
                report = mfsb::rate_report(w, rt_depth ? rt_depth : w.digit_sum());
            } else if (!rt_rational.empty()) {
                const mfsb::Fraction x = mfsb::Fraction::parse(rt_rational);
                const mfsb::CFWord w = mfsb::cf_expand(x);
                report = mfsb::rate_report(w, rt_depth ? rt_depth : w.digit_sum());
                report.input = rt_rational;
            } else if (!rt_decimal.empty()) {
                report = mfsb::rate_report_decimal(rt_decimal,
                                                   rt_depth ? rt_depth : UINT64_MAX / 2);
            } else {
                std::cerr << "rates: need one of --cf, --rational, --decimal, --montecarlo\n";
                return 2;
            }
            *out.os << mfsb::io::rate_report_json(report).dump(2) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            mfsb::claims::Budget budget;
            budget.quick = vf_budget == "quick";
            budget.threads = threads;
            const auto& registry = mfsb::claims::all_claims();
            if (vf_list) {
                for (const auto& spec : registry) std::cout << spec.id << "\n";
                return 0;
            }
            std::vector<std::string> selected;
            if (!vf_claims.empty()) {
                std::size_t pos = 0;
                while (pos < vf_claims.size()) {
                    std::size_t next = vf_claims.find(',', pos);
                    if (next == std::string::npos) next = vf_claims.size();
                    selected.push_back(vf_claims.substr(pos, next - pos));
                    pos = next + 1;
                }
                for (const auto& id : selected) {
                    const bool known = std::any_of(registry.begin(), registry.end(),
                                                   [&](const auto& s) { return s.id == id; });
                    if (!known) {
                        std::cerr << "verify: unknown claim id '" << id << "'\n";
                        return 2;
                    }
                }
            }
            bool all_pass = true;
            for (const auto& spec : registry) {
                if (!selected.empty() &&
                    std::find(selected.begin(), selected.end(), spec.id) == selected.end()) {
                    continue;
                }
                const auto res = mfsb::claims::run_claim(spec, budget);
                all_pass = all_pass && res.pass;
                std::printf("[%s] %-28s %7.2fs  %s\n", res.pass ? "PASS" : "FAIL",
                            spec.id.c_str(), res.seconds, res.detail.c_str());
            }
            return all_pass ? 0 : 1;
        }
    } catch (const mfsb::depth_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
