#pragma once

// Desk-scale numerical experiments: identity suites, Cesaro L^1 growth
// tables, the pointwise Cesaro bound, the growth of ||K_m||_1 and the
// empirical Bernstein inequality for multiplier operators.
//
// Every experiment is a pure function of its config. Cases are computed
// independently (optionally in parallel) and stored by case index, so the
// report does not depend on the worker count.

#include "csphere/report.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace csphere {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

struct IdentityConfig {
    std::vector<int> q_list{2, 3};
    int l_max = 16;
    int theta_points = 17; // inclusive grid on [0, pi/2]
    int phi_points = 23;   // equispaced on [0, 2 pi)
    int random_t = 100;
    std::uint64_t seed = 7;
    double tol_bivariate = 1e-9;
    double tol_imag = 1e-10;
    double tol_norm_identity = 1e-12;
    double tol_full_kernel = 1e-9;
    int workers = 1;

    Json echo() const;
};

ExperimentReport run_identity_suite(const IdentityConfig& config);

struct CesaroConfig {
    int q = 2;
    std::vector<double> deltas{0.0, 1.0, 2.0};
    std::vector<int> n_list{8, 16, 32, 64, 128};
    int nodes_per_piece = 24; // refinement check doubles this
    double refine_tol = 1e-6;
    double slope_tol = 0.25;
    double log_ratio_max = 5.0;
    double bounded_ratio_max = 3.0;
    int workers = 1;

    Json echo() const;
};

/// Regime of the L^1 growth of S_n^delta.
enum class CesaroRegime { Power, Log, Bounded, Unclassified };

CesaroRegime cesaro_regime(int q, double delta);

/// ||S_n^delta||_1 via the sign-split line rule.
double cesaro_l1_norm(int q, double delta, int n, int nodes_per_piece, int workers = 1);

ExperimentReport run_cesaro_table(const CesaroConfig& config);

struct PointwiseConfig {
    int q = 2;
    double delta = 0.0;
    std::vector<int> n_list{32, 64};
    int psi_points = 4000;
    double stability_factor = 2.0;
    int workers = 1;

    Json echo() const;
};

struct PointwiseConstants {
    double far = 0.0;      // max |S| / (n^{q-delta-1} psi^{-(q+delta)}) on [3/n, pi/4]
    double near = 0.0;     // max |S| / n^{2q-1} on [0, 3/n]
    double pole = 0.0;     // S(1) / n^{2q-1}
    double outer_max = 0.0; // max |S| on [pi/4, 3 pi/4]
};

PointwiseConstants pointwise_constants(int q, double delta, int n, int psi_points);

ExperimentReport run_pointwise_bound_check(const PointwiseConfig& config);

struct KmConfig {
    int q = 2;
    double gamma = 1.0;
    std::vector<int> n_list{8, 16, 32, 64};
    int nodes_per_piece = 24;
    int random_t = 50;
    std::uint64_t seed = 5;
    double slope_tol = 0.3;
    double bounded_ratio_max = 3.0;
    double abel_tol = 1e-10;
    double refine_tol = 1e-6;
    int workers = 1;

    Json echo() const;
};

ExperimentReport run_km_norm(const KmConfig& config);

struct BernsteinConfig {
    int q = 2;
    double gamma = 2.0;
    std::vector<double> r_list{2.0, kInfNorm};
    std::vector<int> n_list{4, 8, 16, 32};
    int trials = 50;
    std::uint64_t seed = 11;
    int samples = 4096;
    int max_centers = 8;
    double trend_factor = 1.2;
    double eigen_tol = 1e-10;
    double identity_tol = 1e-10;
    int workers = 1;

    Json echo() const;
};

ExperimentReport run_bernstein(const BernsteinConfig& config);

/// "inf" for infinity, otherwise the number.
Json norm_index_json(double r);

} // namespace csphere
