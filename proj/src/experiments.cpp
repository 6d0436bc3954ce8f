#include "csphere/experiments.hpp"

#include "csphere/kernels.hpp"
#include "csphere/specfun.hpp"
#include "csphere/sphere.hpp"
#include "csphere/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace csphere {

namespace {

constexpr double kPi = std::numbers::pi;

// stream tags
constexpr std::uint64_t kFullKernelStream = 1;
constexpr std::uint64_t kTrialStream = 2;
constexpr std::uint64_t kSampleStream = 3;
constexpr std::uint64_t kEigenStream = 4;
constexpr std::uint64_t kAbelStream = 5;

double rel_change(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

void require_n_list(const std::vector<int>& n_list, int min_n)
{
    if (n_list.empty()) {
        throw std::invalid_argument("n list must not be empty");
    }
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < min_n) {
            throw std::invalid_argument("n values must be >= " + std::to_string(min_n));
        }
        if (i > 0 && n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("n list must be strictly increasing");
        }
    }
}

std::string regime_name(CesaroRegime r)
{
    switch (r) {
    case CesaroRegime::Power:
        return "power";
    case CesaroRegime::Log:
        return "log2";
    case CesaroRegime::Bounded:
        return "bounded";
    case CesaroRegime::Unclassified:
        break;
    }
    return "unclassified";
}

} // namespace

Json norm_index_json(double r)
{
    if (std::isinf(r)) {
        return "inf";
    }
    return r;
}

// ---------------------------------------------------------------- identities

Json IdentityConfig::echo() const
{
    Json j;
    j["q_list"] = q_list;
    j["l_max"] = l_max;
    j["theta_points"] = theta_points;
    j["phi_points"] = phi_points;
    j["random_t"] = random_t;
    j["seed"] = seed;
    j["tol_bivariate"] = tol_bivariate;
    j["tol_imag"] = tol_imag;
    j["tol_norm_identity"] = tol_norm_identity;
    j["tol_full_kernel"] = tol_full_kernel;
    return j;
}

ExperimentReport run_identity_suite(const IdentityConfig& config)
{
    if (config.q_list.empty() || config.l_max < 0 || config.theta_points < 2
        || config.phi_points < 1) {
        throw std::invalid_argument("identity suite needs q values, l_max >= 0 and a grid");
    }
    for (int q : config.q_list) {
        require_sphere_q(q);
    }

    ExperimentReport report;
    report.name = "identity";
    report.config = config.echo();
    report.columns = {"check", "q", "l", "residual", "tolerance", "passed"};

    struct Case {
        int q;
        int l;
        double bivariate = 0.0;
        double imag = 0.0;
        double norm_identity = 0.0;
        bool branching = false;
        bool telescoping = false;
        double full_kernel = 0.0;
    };
    std::vector<Case> cases;
    for (int q : config.q_list) {
        for (int l = 0; l <= config.l_max; ++l) {
            cases.push_back({q, l});
        }
    }

    parallel_for(cases.size(), config.workers, [&](std::size_t idx) {
        Case& c = cases[idx];
        for (int i = 0; i < config.theta_points; ++i) {
            const double theta = (kPi / 2.0) * i / (config.theta_points - 1);
            for (int j = 0; j < config.phi_points; ++j) {
                const Angles a(theta, 2.0 * kPi * j / config.phi_points);
                c.bivariate = std::max(c.bivariate, verify_bivariate(c.l, c.q, a));
                c.imag = std::max(c.imag, std::abs(bivariate_sum(c.l, c.q, a).imag()));
            }
        }

        const double sigma = c.q - 1.0;
        const double lhs = to_double(dim_degree(c.l, c.q)) * gegenbauer_norm(sigma, c.l);
        const double p1 = gegenbauer_eval(GegenbauerIndex(sigma, c.l), 1.0);
        const double constant = std::exp((3.0 - 2.0 * c.q) * std::numbers::ln2 + std::log(kPi)
                                         + log_gamma(2.0 * c.q - 2.0) - log_gamma(c.q)
                                         - log_gamma(c.q - 1.0));
        c.norm_identity = std::abs(lhs - constant * p1 * p1) / std::abs(lhs);

        BigInt branch = 0;
        for (int m = 0; m <= c.l; ++m) {
            branch += dim_harm(HarmIndex(m, c.l - m, c.q));
        }
        c.branching = branch == dim_degree(c.l, c.q);
        BigInt tele = 0;
        for (int k = 0; k <= c.l; ++k) {
            tele += dim_degree(k, c.q);
        }
        c.telescoping = tele == dim_poly(c.l, c.q);

        auto rng = make_stream(config.seed, stream_key({kFullKernelStream,
                                                        static_cast<std::uint64_t>(c.q),
                                                        static_cast<std::uint64_t>(c.l)}));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        const double tn = to_double(dim_poly(c.l, c.q));
        for (int s = 0; s < config.random_t; ++s) {
            const double t = unif(rng);
            const auto h = kernel_degree_sequence(c.l, c.q, t);
            double sum = 0.0;
            for (double v : h) {
                sum += v;
            }
            c.full_kernel = std::max(c.full_kernel, std::abs(sum - kernel_full(c.l, c.q, t)) / tn);
        }
    });

    const auto add = [&](const std::string& check, const Case& c, double residual, double tol) {
        const bool ok = residual <= tol;
        Json row;
        row["check"] = check;
        row["q"] = c.q;
        row["l"] = c.l;
        row["residual"] = residual;
        row["tolerance"] = tol;
        row["passed"] = ok;
        report.add_row(std::move(row));
        report.max_residual = std::max(report.max_residual, residual);
        if (!ok) {
            report.fail(check + " q=" + std::to_string(c.q) + " l=" + std::to_string(c.l));
        }
    };

    Json maxima = Json::object();
    for (const auto& c : cases) {
        add("bivariate", c, c.bivariate, config.tol_bivariate);
        add("bivariate_imag", c, c.imag, config.tol_imag);
        add("norm_identity", c, c.norm_identity, config.tol_norm_identity);
        add("branching", c, c.branching ? 0.0 : 1.0, 0.0);
        add("telescoping", c, c.telescoping ? 0.0 : 1.0, 0.0);
        add("full_kernel", c, c.full_kernel, config.tol_full_kernel);
        for (const auto& [key, v] : {std::pair{"bivariate", c.bivariate}, {"bivariate_imag", c.imag},
                                     {"norm_identity", c.norm_identity}, {"full_kernel", c.full_kernel}}) {
            maxima[key] = std::max(maxima.value(key, 0.0), v);
        }
    }
    report.summary["max_by_check"] = maxima;
    return report;
}

// ---------------------------------------------------------------- Cesaro

Json CesaroConfig::echo() const
{
    Json j;
    j["q"] = q;
    j["deltas"] = deltas;
    j["n_list"] = n_list;
    j["nodes_per_piece"] = nodes_per_piece;
    j["refine_tol"] = refine_tol;
    j["slope_tol"] = slope_tol;
    j["log_ratio_max"] = log_ratio_max;
    j["bounded_ratio_max"] = bounded_ratio_max;
    return j;
}

CesaroRegime cesaro_regime(int q, double delta)
{
    if (delta < q - 1.0) {
        return CesaroRegime::Power;
    }
    if (delta == q - 1.0) {
        return CesaroRegime::Log;
    }
    if (delta >= q) {
        return CesaroRegime::Bounded;
    }
    return CesaroRegime::Unclassified;
}

double cesaro_l1_norm(int q, double delta, int n, int nodes_per_piece, int workers)
{
    const ZonalKernel k = cesaro_kernel(n, delta, q);
    return zonal_lr_norm(k, 1.0, adapted_line_rule(k, nodes_per_piece), workers);
}

ExperimentReport run_cesaro_table(const CesaroConfig& config)
{
    require_sphere_q(config.q);
    require_n_list(config.n_list, 2);
    if (config.deltas.empty()) {
        throw std::invalid_argument("delta list must not be empty");
    }
    for (double d : config.deltas) {
        if (!(d >= 0.0)) {
            throw std::invalid_argument("delta must be >= 0");
        }
    }

    ExperimentReport report;
    report.name = "cesaro";
    report.config = config.echo();
    report.columns = {"q",        "delta",     "n",          "l1_norm",   "fitted_slope",
                      "predicted_rate", "converged", "l1_norm_refined", "rel_change", "normalized"};

    const std::size_t nn = config.n_list.size();
    std::vector<double> norm(config.deltas.size() * nn);
    std::vector<double> refined(norm.size());
    parallel_for(norm.size(), config.workers, [&](std::size_t idx) {
        const double delta = config.deltas[idx / nn];
        const int n = config.n_list[idx % nn];
        norm[idx] = cesaro_l1_norm(config.q, delta, n, config.nodes_per_piece);
        refined[idx] = cesaro_l1_norm(config.q, delta, n, 2 * config.nodes_per_piece);
    });

    Json fits = Json::array();
    for (std::size_t di = 0; di < config.deltas.size(); ++di) {
        const double delta = config.deltas[di];
        const CesaroRegime regime = cesaro_regime(config.q, delta);
        std::vector<double> norms(norm.begin() + di * nn, norm.begin() + (di + 1) * nn);
        const GrowthFit fit = fit_growth(config.n_list, norms);

        std::vector<double> normalized(nn);
        for (std::size_t i = 0; i < nn; ++i) {
            const double ln = std::log(static_cast<double>(config.n_list[i]));
            normalized[i] = regime == CesaroRegime::Log ? norms[i] / (ln * ln) : norms[i];
        }

        std::string predicted;
        Json verdict;
        verdict["delta"] = delta;
        verdict["regime"] = regime_name(regime);
        verdict["fit"] = growth_to_json(fit);
        bool ok = true;
        switch (regime) {
        case CesaroRegime::Power: {
            const double rate = config.q - 1.0 - delta;
            predicted = "n^" + format_real(rate);
            verdict["predicted_slope"] = rate;
            verdict["statistic"] = fit.fitted_slope;
            verdict["tolerance"] = config.slope_tol;
            ok = std::abs(fit.fitted_slope - rate) <= config.slope_tol;
            break;
        }
        case CesaroRegime::Log:
            predicted = "(log n)^2";
            verdict["statistic"] = max_min_ratio(normalized);
            verdict["tolerance"] = config.log_ratio_max;
            ok = max_min_ratio(normalized) <= config.log_ratio_max;
            break;
        case CesaroRegime::Bounded:
            predicted = "1";
            verdict["statistic"] = max_min_ratio(normalized);
            verdict["tolerance"] = config.bounded_ratio_max;
            ok = max_min_ratio(normalized) <= config.bounded_ratio_max;
            break;
        case CesaroRegime::Unclassified:
            predicted = "unclassified";
            break;
        }

        bool converged_all = true;
        for (std::size_t i = 0; i < nn; ++i) {
            const std::size_t idx = di * nn + i;
            const double change = rel_change(norm[idx], refined[idx]);
            const bool converged = change < config.refine_tol;
            converged_all = converged_all && converged;
            report.max_residual = std::max(report.max_residual, change);
            Json row;
            row["q"] = config.q;
            row["delta"] = delta;
            row["n"] = config.n_list[i];
            row["l1_norm"] = norm[idx];
            row["fitted_slope"] = fit.fitted_slope;
            row["predicted_rate"] = predicted;
            row["converged"] = converged;
            row["l1_norm_refined"] = refined[idx];
            row["rel_change"] = change;
            row["normalized"] = normalized[i];
            report.add_row(std::move(row));
        }
        verdict["converged"] = converged_all;
        verdict["passed"] = ok && converged_all;
        if (!ok) {
            report.fail("delta=" + format_real(delta) + " rate test");
        }
        if (!converged_all) {
            report.fail("delta=" + format_real(delta) + " quadrature refinement");
        }
        fits.push_back(std::move(verdict));
    }
    report.summary["fits"] = fits;
    return report;
}

// ---------------------------------------------------------------- pointwise

Json PointwiseConfig::echo() const
{
    Json j;
    j["q"] = q;
    j["delta"] = delta;
    j["n_list"] = n_list;
    j["psi_points"] = psi_points;
    j["stability_factor"] = stability_factor;
    return j;
}

PointwiseConstants pointwise_constants(int q, double delta, int n, int psi_points)
{
    if (psi_points < 2) {
        throw std::invalid_argument("psi grid needs at least two points");
    }
    if (n < 13) {
        throw std::invalid_argument("pointwise bound needs 3/n < pi/4, i.e. n >= 4; use n >= 13 so the "
                                    "near region is resolved");
    }
    const ZonalKernel k = cesaro_kernel(n, delta, q);
    const double qd = static_cast<double>(q);
    PointwiseConstants c;
    const double near_scale = std::pow(static_cast<double>(n), 2.0 * qd - 1.0);
    c.pole = k(1.0) / near_scale;

    const double cut = 3.0 / n;
    for (int i = 0; i < psi_points; ++i) {
        const double psi = cut * i / (psi_points - 1);
        c.near = std::max(c.near, std::abs(k(std::cos(psi))) / near_scale);
    }
    const double far_scale = std::pow(static_cast<double>(n), qd - delta - 1.0);
    for (int i = 0; i < psi_points; ++i) {
        const double psi = cut + (kPi / 4.0 - cut) * i / (psi_points - 1);
        const double bound = far_scale * std::pow(psi, -(qd + delta));
        c.far = std::max(c.far, std::abs(k(std::cos(psi))) / bound);
    }
    for (int i = 0; i < psi_points; ++i) {
        const double psi = kPi / 4.0 + (kPi / 2.0) * i / (psi_points - 1);
        c.outer_max = std::max(c.outer_max, std::abs(k(std::cos(psi))));
    }
    return c;
}

ExperimentReport run_pointwise_bound_check(const PointwiseConfig& config)
{
    require_sphere_q(config.q);
    require_n_list(config.n_list, 13);
    if (!(config.delta >= 0.0 && config.delta <= config.q)) {
        throw std::invalid_argument("pointwise bound needs 0 <= delta <= q");
    }

    ExperimentReport report;
    report.name = "pointwise";
    report.config = config.echo();
    report.columns = {"q", "delta", "n", "c_far", "c_near", "pole_ratio", "outer_max"};

    std::vector<PointwiseConstants> consts(config.n_list.size());
    parallel_for(consts.size(), config.workers, [&](std::size_t i) {
        consts[i] = pointwise_constants(config.q, config.delta, config.n_list[i], config.psi_points);
    });

    std::vector<double> far;
    for (std::size_t i = 0; i < consts.size(); ++i) {
        Json row;
        row["q"] = config.q;
        row["delta"] = config.delta;
        row["n"] = config.n_list[i];
        row["c_far"] = consts[i].far;
        row["c_near"] = consts[i].near;
        row["pole_ratio"] = consts[i].pole;
        row["outer_max"] = consts[i].outer_max;
        report.add_row(std::move(row));
        far.push_back(consts[i].far);
    }
    double worst = 1.0;
    for (std::size_t i = 1; i < far.size(); ++i) {
        const double ratio = std::max(far[i], far[i - 1]) / std::min(far[i], far[i - 1]);
        worst = std::max(worst, ratio);
    }
    report.summary["max_consecutive_far_ratio"] = worst;
    report.summary["stability_factor"] = config.stability_factor;
    report.max_residual = worst;
    if (!(worst < config.stability_factor)) {
        report.fail("far-region constant varies by a factor >= stability_factor");
    }
    return report;
}

// ---------------------------------------------------------------- K_m

Json KmConfig::echo() const
{
    Json j;
    j["q"] = q;
    j["gamma"] = gamma;
    j["n_list"] = n_list;
    j["nodes_per_piece"] = nodes_per_piece;
    j["random_t"] = random_t;
    j["seed"] = seed;
    j["slope_tol"] = slope_tol;
    j["bounded_ratio_max"] = bounded_ratio_max;
    j["abel_tol"] = abel_tol;
    j["refine_tol"] = refine_tol;
    return j;
}

ExperimentReport run_km_norm(const KmConfig& config)
{
    require_sphere_q(config.q);
    require_n_list(config.n_list, 1);

    ExperimentReport report;
    report.name = "km_norm";
    report.config = config.echo();
    report.columns = {"q",         "gamma", "n", "m", "l1_norm", "l1_norm_refined",
                      "rel_change", "abel_residual", "pole_value"};

    struct Case {
        int m = 0;
        double norm = 0.0;
        double refined = 0.0;
        double abel = 0.0;
        double pole = 0.0;
    };
    std::vector<Case> cases(config.n_list.size());
    parallel_for(cases.size(), config.workers, [&](std::size_t i) {
        const int n = config.n_list[i];
        Case& c = cases[i];
        c.m = 2 * n + config.q + 1;
        const auto seq = build_rho(n, c.m, config.q, config.gamma);
        const auto km = kernel_Km_abel(seq, config.q);
        c.norm = zonal_lr_norm(km.direct, 1.0, adapted_line_rule(km.direct, config.nodes_per_piece));
        c.refined = zonal_lr_norm(km.direct, 1.0,
                                  adapted_line_rule(km.direct, 2 * config.nodes_per_piece));
        c.pole = km.direct.pole_value();
        auto rng = make_stream(config.seed, stream_key({kAbelStream, static_cast<std::uint64_t>(n)}));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        const double scale = std::max(std::abs(c.pole), 1.0);
        for (int s = 0; s < config.random_t; ++s) {
            const double t = s == 0 ? 1.0 : unif(rng);
            c.abel = std::max(c.abel, std::abs(km.abel(t) - km.direct(t)) / scale);
        }
    });

    std::vector<double> norms;
    bool abel_ok = true;
    bool converged = true;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        const double change = rel_change(c.norm, c.refined);
        Json row;
        row["q"] = config.q;
        row["gamma"] = config.gamma;
        row["n"] = config.n_list[i];
        row["m"] = c.m;
        row["l1_norm"] = c.norm;
        row["l1_norm_refined"] = c.refined;
        row["rel_change"] = change;
        row["abel_residual"] = c.abel;
        row["pole_value"] = c.pole;
        report.add_row(std::move(row));
        norms.push_back(c.norm);
        abel_ok = abel_ok && c.abel <= config.abel_tol;
        converged = converged && change < config.refine_tol;
        report.max_residual = std::max(report.max_residual, c.abel);
    }

    report.summary["abel_ok"] = abel_ok;
    report.summary["converged"] = converged;
    if (!abel_ok) {
        report.fail("Abel and direct assembly disagree");
    }
    if (!converged) {
        report.fail("quadrature refinement");
    }
    if (config.gamma == 0.0) {
        const double ratio = max_min_ratio(norms);
        report.summary["max_min_ratio"] = ratio;
        if (!(ratio <= config.bounded_ratio_max)) {
            report.fail("||K_m||_1 not bounded for gamma = 0");
        }
    } else if (norms.size() >= 2) {
        const GrowthFit fit = fit_growth(config.n_list, norms);
        report.summary["fit"] = growth_to_json(fit);
        report.summary["predicted_slope"] = config.gamma;
        if (!(std::abs(fit.fitted_slope - config.gamma) <= config.slope_tol)) {
            report.fail("||K_m||_1 growth exponent off by more than slope_tol");
        }
    }
    return report;
}

// ---------------------------------------------------------------- Bernstein

Json BernsteinConfig::echo() const
{
    Json j;
    j["q"] = q;
    j["gamma"] = gamma;
    Json rs = Json::array();
    for (double r : r_list) {
        rs.push_back(norm_index_json(r));
    }
    j["r_list"] = rs;
    j["n_list"] = n_list;
    j["trials"] = trials;
    j["seed"] = seed;
    j["samples"] = samples;
    j["max_centers"] = max_centers;
    j["trend_factor"] = trend_factor;
    j["eigen_tol"] = eigen_tol;
    j["identity_tol"] = identity_tol;
    return j;
}

namespace {

double polynomial_norm(const ZonalPolynomial& p, double r, const std::vector<SpherePoint>& points)
{
    if (r == 2.0) {
        return l2_norm_exact(p);
    }
    return sampled_lr_norm(p, r, points);
}

// Evaluation points for sampled norms: a shared random set plus the
// centers of p and their antipodes, where translated kernels peak.
std::vector<SpherePoint> evaluation_points(const std::vector<SpherePoint>& shared,
                                           const ZonalPolynomial& p)
{
    std::vector<SpherePoint> pts = shared;
    for (const auto& c : p.centers) {
        pts.push_back(c);
        auto neg = c.coords();
        for (auto& v : neg) {
            v = -v;
        }
        pts.emplace_back(std::move(neg));
    }
    return pts;
}

} // namespace

ExperimentReport run_bernstein(const BernsteinConfig& config)
{
    require_sphere_q(config.q);
    require_n_list(config.n_list, 1);
    if (config.trials < 1 || config.samples < 1) {
        throw std::invalid_argument("Bernstein experiment needs trials >= 1 and samples >= 1");
    }
    if (config.r_list.empty()) {
        throw std::invalid_argument("r list must not be empty");
    }
    for (double r : config.r_list) {
        if (!(r >= 1.0)) {
            throw std::invalid_argument("norm index r must be >= 1");
        }
    }

    ExperimentReport report;
    report.name = "bernstein";
    report.config = config.echo();
    report.columns = {"q",           "gamma",          "r",              "n",
                      "max_ratio",   "eigen_ratio",    "eigen_expected", "eigen_residual",
                      "resampled"};

    const std::size_t nr = config.r_list.size();
    const std::size_t nn = config.n_list.size();

    struct Case {
        double max_ratio = 0.0;
        double eigen_ratio = 0.0;
        double eigen_expected = 0.0;
        double eigen_residual = 0.0;
        int resampled = 0;
    };
    std::vector<Case> cases(nr * nn);

    for (std::size_t ni = 0; ni < nn; ++ni) {
        const int n = config.n_list[ni];
        const int m = 2 * n + config.q + 1;
        const MultiplierSequence seq = build_rho(n, m, config.q, config.gamma);
        const double scale = std::pow(static_cast<double>(n), config.gamma);

        auto srng = make_stream(config.seed, stream_key({kSampleStream, static_cast<std::uint64_t>(n)}));
        std::vector<SpherePoint> shared;
        shared.reserve(static_cast<std::size_t>(config.samples));
        for (int s = 0; s < config.samples; ++s) {
            shared.push_back(random_point(config.q, srng));
        }

        // trial t, norm index r -> ratio
        std::vector<double> ratios(static_cast<std::size_t>(config.trials) * nr, 0.0);
        std::vector<int> resampled(static_cast<std::size_t>(config.trials), 0);
        parallel_for(static_cast<std::size_t>(config.trials), config.workers, [&](std::size_t t) {
            auto rng = make_stream(config.seed, stream_key({kTrialStream, static_cast<std::uint64_t>(n),
                                                            static_cast<std::uint64_t>(t)}));
            for (;;) {
                const ZonalPolynomial p = random_polynomial(config.q, n, rng, config.max_centers);
                const ZonalPolynomial lp = apply_multiplier(seq, p);
                const auto pts = evaluation_points(shared, p);
                std::vector<double> rr(nr);
                bool degenerate = false;
                for (std::size_t ri = 0; ri < nr; ++ri) {
                    const double pn = polynomial_norm(p, config.r_list[ri], pts);
                    if (!(pn >= 1e-12)) {
                        degenerate = true;
                        break;
                    }
                    rr[ri] = polynomial_norm(lp, config.r_list[ri], pts) / (scale * pn);
                }
                if (degenerate) {
                    ++resampled[t];
                    continue;
                }
                for (std::size_t ri = 0; ri < nr; ++ri) {
                    ratios[t * nr + ri] = rr[ri];
                }
                break;
            }
        });

        auto erng = make_stream(config.seed, stream_key({kEigenStream, static_cast<std::uint64_t>(n)}));
        const ZonalPolynomial eig = random_harmonic(config.q, n, erng);
        const ZonalPolynomial leig = apply_multiplier(seq, eig);
        const auto epts = evaluation_points(shared, eig);
        const double expected = bernstein_multiplier(n, config.q, config.gamma) / scale;

        int total_resampled = 0;
        for (int r : resampled) {
            total_resampled += r;
        }
        for (std::size_t ri = 0; ri < nr; ++ri) {
            Case& c = cases[ri * nn + ni];
            for (int t = 0; t < config.trials; ++t) {
                c.max_ratio = std::max(c.max_ratio, ratios[static_cast<std::size_t>(t) * nr + ri]);
            }
            const double r = config.r_list[ri];
            c.eigen_ratio = polynomial_norm(leig, r, epts) / (scale * polynomial_norm(eig, r, epts));
            c.eigen_expected = expected;
            c.eigen_residual = std::abs(c.eigen_ratio - expected) / expected;
            c.resampled = total_resampled;
        }
    }

    Json trends = Json::array();
    for (std::size_t ri = 0; ri < nr; ++ri) {
        double running = 0.0;
        for (std::size_t ni = 0; ni < nn; ++ni) {
            const Case& c = cases[ri * nn + ni];
            Json row;
            row["q"] = config.q;
            row["gamma"] = config.gamma;
            row["r"] = norm_index_json(config.r_list[ri]);
            row["n"] = config.n_list[ni];
            row["max_ratio"] = c.max_ratio;
            row["eigen_ratio"] = c.eigen_ratio;
            row["eigen_expected"] = c.eigen_expected;
            row["eigen_residual"] = c.eigen_residual;
            row["resampled"] = c.resampled;
            report.add_row(std::move(row));
            report.max_residual = std::max(report.max_residual, c.eigen_residual);

            if (c.eigen_residual > config.eigen_tol) {
                report.fail("eigenfunction ratio mismatch at n=" + std::to_string(config.n_list[ni]));
            }
            if (config.gamma == 0.0 && c.max_ratio > 1.0 + config.identity_tol) {
                report.fail("identity multiplier ratio exceeds 1 at n=" + std::to_string(config.n_list[ni]));
            }
            if (ni + 1 == nn && nn >= 2) {
                Json trend;
                trend["r"] = norm_index_json(config.r_list[ri]);
                trend["final_max"] = c.max_ratio;
                trend["running_max"] = running;
                trend["trend_factor"] = config.trend_factor;
                const bool ok = c.max_ratio <= config.trend_factor * running;
                trend["passed"] = ok;
                trends.push_back(std::move(trend));
                if (!ok) {
                    report.fail("increasing Bernstein ratio trend for r=" + norm_index_json(config.r_list[ri]).dump());
                }
            }
            running = std::max(running, c.max_ratio);
        }
    }
    report.summary["trends"] = trends;
    return report;
}

} // namespace csphere
