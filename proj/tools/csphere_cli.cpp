// csphere: run identity suites, Cesaro tables, Bernstein experiments and
// pointwise kernel evaluation. Exit codes: 0 pass, 1 tolerance breach,
// 2 usage error.

#include "args.hpp"

#include "csphere/experiments.hpp"
#include "csphere/kernels.hpp"
#include "csphere/report.hpp"
#include "csphere/sphere.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>

namespace {

using namespace csphere;

constexpr int kExitPass = 0;
constexpr int kExitBreach = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct OutputOptions {
    std::string format = "csv";
    std::string out; // empty: $CSPHERE_OUTPUT_DIR/<name>.<ext> or stdout; "-": stdout
};

std::string extension(const OutputOptions& o) { return o.format == "json" ? ".json" : ".csv"; }

void write_report(const ExperimentReport& report, const OutputOptions& o, std::ostream& out)
{
    if (o.format == "json") {
        out << to_json(report).dump(2) << '\n';
    } else {
        write_csv(report, out);
    }
}

// Primary reports go to --out, else $CSPHERE_OUTPUT_DIR/<name>.<ext>, else
// stdout. Companion reports are only written to files.
std::optional<std::filesystem::path> output_path(const ExperimentReport& report, const OutputOptions& o,
                                                 bool companion)
{
    if (o.out == "-") {
        return std::nullopt;
    }
    if (!o.out.empty()) {
        std::filesystem::path p(o.out);
        if (!companion) {
            return p;
        }
        return p.parent_path() / (p.stem().string() + "_km" + p.extension().string());
    }
    if (const char* dir = std::getenv("CSPHERE_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / (report.name + extension(o));
    }
    return std::nullopt;
}

void emit(const ExperimentReport& report, const OutputOptions& o, bool companion)
{
    const auto path = output_path(report, o, companion);
    if (!path) {
        if (!companion) {
            write_report(report, o, std::cout);
        }
        return;
    }
    if (path->has_parent_path()) {
        std::filesystem::create_directories(path->parent_path());
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path->string());
    }
    write_report(report, o, f);
    std::cerr << "wrote " << path->string() << '\n';
}

void print_summary(const ExperimentReport& report)
{
    std::cerr << report.name << ": " << (report.passed ? "PASS" : "FAIL")
              << " max_residual=" << format_real(report.max_residual) << '\n';
    if (report.summary.contains("failures")) {
        for (const auto& f : report.summary["failures"]) {
            std::cerr << "  " << f.get<std::string>() << '\n';
        }
    }
}

std::vector<int> int_list(const std::string& text, const char* what)
{
    try {
        auto v = cli::parse_int_range(text);
        if (v.empty()) {
            throw std::invalid_argument("empty list");
        }
        return v;
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

std::vector<double> real_list(const std::string& text, const char* what, bool norms = false)
{
    try {
        return norms ? cli::parse_norm_list(text) : cli::parse_real_list(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

void add_output_options(CLI::App* cmd, OutputOptions& o)
{
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output file, '-' for stdout");
}

struct KernelOptions {
    std::string name;
    int q = 2;
    int l = 0;
    int m = 0;
    int n = 0;
    double delta = 0.0;
    double gamma = 1.0;
    std::optional<double> theta;
    std::optional<double> phi;
    std::string grid;
};

int run_kernel(const KernelOptions& k, const OutputOptions& o)
{
    require_sphere_q(k.q);
    std::vector<Angles> points;
    if (!k.grid.empty()) {
        if (k.theta || k.phi) {
            throw UsageError("--grid conflicts with --theta/--phi");
        }
        std::pair<int, int> g;
        try {
            g = cli::parse_grid(k.grid);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        for (int i = 0; i < g.first; ++i) {
            const double theta = g.first == 1 ? 0.0 : (std::numbers::pi / 2.0) * i / (g.first - 1);
            for (int j = 0; j < g.second; ++j) {
                points.emplace_back(theta, 2.0 * std::numbers::pi * j / g.second);
            }
        }
    } else {
        points.emplace_back(k.theta.value_or(0.0), k.phi.value_or(0.0));
    }

    std::function<Complex(const Angles&)> eval;
    Json echo;
    echo["name"] = k.name;
    echo["q"] = k.q;
    if (k.name == "h") {
        echo["l"] = k.l;
        eval = [&](const Angles& a) { return Complex(kernel_degree(k.l, k.q, a.real_inner()), 0.0); };
    } else if (k.name == "harm") {
        echo["m"] = k.m;
        echo["n"] = k.n;
        eval = [&](const Angles& a) { return kernel_harm(k.m, k.n, k.q, a); };
    } else if (k.name == "full") {
        echo["n"] = k.n;
        eval = [&](const Angles& a) { return Complex(kernel_full(k.n, k.q, a.real_inner()), 0.0); };
    } else if (k.name == "cesaro") {
        echo["n"] = k.n;
        echo["delta"] = k.delta;
        auto kernel = std::make_shared<ZonalKernel>(cesaro_kernel(k.n, k.delta, k.q));
        eval = [kernel](const Angles& a) { return Complex((*kernel)(a.real_inner()), 0.0); };
    } else if (k.name == "km") {
        echo["n"] = k.n;
        echo["gamma"] = k.gamma;
        const int m = 2 * k.n + k.q + 1;
        echo["m"] = m;
        auto kernel = std::make_shared<ZonalKernel>(
            kernel_Km_abel(build_rho(k.n, m, k.q, k.gamma), k.q).direct);
        eval = [kernel](const Angles& a) { return Complex((*kernel)(a.real_inner()), 0.0); };
    } else {
        throw UsageError("unknown kernel name '" + k.name + "' (expected h, harm, full, cesaro, km)");
    }

    ExperimentReport report;
    report.name = "kernel";
    report.config = echo;
    report.columns = {"theta", "phi", "real", "imag"};
    for (const auto& a : points) {
        const Complex v = eval(a);
        Json row;
        row["theta"] = a.theta;
        row["phi"] = a.phi;
        row["real"] = v.real();
        row["imag"] = v.imag();
        report.add_row(std::move(row));
    }
    emit(report, o, false);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Harmonic analysis on the complex sphere: identity checks and growth experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    // verify
    OutputOptions verify_out;
    verify_out.format = "json";
    IdentityConfig icfg;
    std::string verify_q = "2,3";
    auto* verify = app.add_subcommand("verify", "bivariate, dimension and closed-form identities");
    verify->add_option("--q", verify_q, "q values (list or range)");
    verify->add_option("--lmax", icfg.l_max, "largest degree")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", icfg.seed, "seed for random t samples");
    verify->add_option("--theta-points", icfg.theta_points, "theta grid size");
    verify->add_option("--phi-points", icfg.phi_points, "phi grid size");
    verify->add_option("--random-t", icfg.random_t, "random t samples per case");
    add_output_options(verify, verify_out);

    // cesaro
    OutputOptions cesaro_out;
    CesaroConfig ccfg;
    std::string cesaro_delta = "0,1,2";
    std::string cesaro_n = "8:128:x2";
    auto* cesaro = app.add_subcommand("cesaro", "L^1 norms of Cesaro kernels");
    cesaro->add_option("--q", ccfg.q, "sphere parameter q");
    cesaro->add_option("--delta", cesaro_delta, "Cesaro orders");
    cesaro->add_option("--n", cesaro_n, "degrees (list or range)");
    cesaro->add_option("--nodes-per-piece", ccfg.nodes_per_piece, "Gauss nodes per sign-constant piece")
        ->check(CLI::PositiveNumber);
    add_output_options(cesaro, cesaro_out);

    // bernstein
    OutputOptions bern_out;
    BernsteinConfig bcfg;
    std::string bern_r = "2,inf";
    std::string bern_n = "4:32:x2";
    auto* bern = app.add_subcommand("bernstein", "empirical Bernstein inequality and ||K_m||_1 growth");
    bern->add_option("--q", bcfg.q, "sphere parameter q");
    bern->add_option("--gamma", bcfg.gamma, "multiplier exponent")->check(CLI::NonNegativeNumber);
    bern->add_option("--r", bern_r, "norm indices, 'inf' allowed");
    bern->add_option("--n", bern_n, "degrees (list or range)");
    bern->add_option("--trials", bcfg.trials, "random polynomials per n")->check(CLI::PositiveNumber);
    bern->add_option("--seed", bcfg.seed, "seed");
    bern->add_option("--samples", bcfg.samples, "sample points for sampled norms")
        ->check(CLI::PositiveNumber);
    add_output_options(bern, bern_out);

    // kernel
    OutputOptions kernel_out;
    KernelOptions kopt;
    auto* kernel = app.add_subcommand("kernel", "pointwise kernel values on a (theta, phi) grid");
    kernel->add_option("--name", kopt.name, "h, harm, full, cesaro or km")->required();
    kernel->add_option("--q", kopt.q, "sphere parameter q");
    kernel->add_option("--l", kopt.l, "degree for h")->check(CLI::NonNegativeNumber);
    kernel->add_option("--m", kopt.m, "first bidegree for harm")->check(CLI::NonNegativeNumber);
    kernel->add_option("--n", kopt.n, "degree (second bidegree for harm)")->check(CLI::NonNegativeNumber);
    kernel->add_option("--delta", kopt.delta, "Cesaro order");
    kernel->add_option("--gamma", kopt.gamma, "multiplier exponent for km");
    kernel->add_option("--theta", kopt.theta, "theta in [0, pi/2]");
    kernel->add_option("--phi", kopt.phi, "phi");
    kernel->add_option("--grid", kopt.grid, "AxB grid over [0, pi/2] x [0, 2 pi)");
    add_output_options(kernel, kernel_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            icfg.q_list = int_list(verify_q, "--q");
            icfg.workers = workers;
            const auto report = run_identity_suite(icfg);
            emit(report, verify_out, false);
            print_summary(report);
            return report.passed ? kExitPass : kExitBreach;
        }
        if (cesaro->parsed()) {
            ccfg.deltas = real_list(cesaro_delta, "--delta");
            ccfg.n_list = int_list(cesaro_n, "--n");
            ccfg.workers = workers;
            const auto report = run_cesaro_table(ccfg);
            emit(report, cesaro_out, false);
            print_summary(report);
            return report.passed ? kExitPass : kExitBreach;
        }
        if (bern->parsed()) {
            bcfg.r_list = real_list(bern_r, "--r", true);
            bcfg.n_list = int_list(bern_n, "--n");
            bcfg.workers = workers;
            const auto report = run_bernstein(bcfg);
            KmConfig kcfg;
            kcfg.q = bcfg.q;
            kcfg.gamma = bcfg.gamma;
            kcfg.n_list = bcfg.n_list;
            kcfg.workers = workers;
            const auto km = run_km_norm(kcfg);
            emit(report, bern_out, false);
            emit(km, bern_out, true);
            print_summary(report);
            print_summary(km);
            return report.passed && km.passed ? kExitPass : kExitBreach;
        }
        if (kernel->parsed()) {
            return run_kernel(kopt, kernel_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBreach;
    }
    return kExitUsage;
}
