#pragma once

// Jacobi and Gegenbauer polynomials, generalized binomials and the
// Gegenbauer L2 normalization constants.
//
// All polynomials are evaluated with the forward three-term recurrence in
// double precision. Degrees are capped at kMaxDegree; up to degree ~40 the
// recurrence is accurate to a few ulps times the degree, and it stays
// usable (relative error well below 1e-10 away from the zeros) to the cap.

#include <span>
#include <stdexcept>
#include <vector>

namespace csphere {

/// Thrown when a parameter lies outside the domain of a special function.
class ParameterDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr int kMaxDegree = 512;

/// Inputs with |x| <= 1 + kClampSlack are clamped into [-1, 1].
inline constexpr double kClampSlack = 1e-12;

/// Jacobi exponents of the weight (1-x)^alpha (1+x)^beta.
struct JacobiParams {
    double alpha;
    double beta;

    JacobiParams(double a, double b);
};

struct GegenbauerIndex {
    double sigma;
    int degree;

    GegenbauerIndex(double s, int l);
};

double clamp_unit(double x);

/// log Gamma for positive arguments (reentrant).
double log_gamma(double x);

/// binom(k + a, k) = Gamma(k+a+1) / (Gamma(a+1) k!) for a > -1, via log-gamma.
double binomial_real(int k, double a);

/// P_j^{(alpha,beta)}(x), normalized by P_j(1) = binom(j+alpha, j).
double jacobi_eval(int j, const JacobiParams& params, double x);

/// P_0 .. P_jmax at x in one recurrence pass.
std::vector<double> jacobi_sequence(int jmax, const JacobiParams& params, double x);

/// sum_j weights[j] P_j^{(alpha,beta)}(x), accumulated along the recurrence.
double jacobi_series(std::span<const double> weights, const JacobiParams& params, double x);

/// Gegenbauer P_l^{(sigma)}(x) with P_l^{(sigma)}(1) = binom(l + 2 sigma - 1, l).
double gegenbauer_eval(const GegenbauerIndex& idx, double x);

/// P_0^{(sigma)} .. P_lmax^{(sigma)} at x.
std::vector<double> gegenbauer_sequence(int lmax, double sigma, double x);

/// gamma_l^{(sigma)} = int_{-1}^{1} (1-t^2)^{sigma-1/2} |P_l^{(sigma)}(t)|^2 dt
///                  = 2^{1-2 sigma} pi / Gamma(sigma)^2 * Gamma(l+2 sigma) / ((l+sigma) l!).
double gegenbauer_norm(double sigma, int l);

/// C_k^delta = binom(k + delta, k).
double cesaro_binomial(int k, double delta);

} // namespace csphere
