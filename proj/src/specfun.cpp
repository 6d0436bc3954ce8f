#include "csphere/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <math.h>

namespace csphere {

namespace {

void check_degree(int j)
{
    if (j < 0 || j > kMaxDegree) {
        throw ParameterDomainError("polynomial degree must lie in [0, "
                                   + std::to_string(kMaxDegree) + "], got "
                                   + std::to_string(j));
    }
}

} // namespace

JacobiParams::JacobiParams(double a, double b) : alpha(a), beta(b)
{
    if (!(a > -1.0) || !(b > -1.0)) {
        throw ParameterDomainError("Jacobi exponents must satisfy alpha > -1 and beta > -1");
    }
}

GegenbauerIndex::GegenbauerIndex(double s, int l) : sigma(s), degree(l)
{
    if (!(s > 0.0)) {
        throw ParameterDomainError("Gegenbauer parameter sigma must be positive");
    }
    check_degree(l);
}

double clamp_unit(double x)
{
    if (std::abs(x) > 1.0 + kClampSlack || std::isnan(x)) {
        throw ParameterDomainError("argument outside [-1, 1]: " + std::to_string(x));
    }
    return std::clamp(x, -1.0, 1.0);
}

double log_gamma(double x)
{
    if (!(x > 0.0)) {
        throw ParameterDomainError("log_gamma requires a positive argument");
    }
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double binomial_real(int k, double a)
{
    if (k < 0) {
        return 0.0;
    }
    if (!(a > -1.0)) {
        throw ParameterDomainError("binomial_real requires a > -1");
    }
    if (k == 0) {
        return 1.0;
    }
    return std::exp(log_gamma(k + a + 1.0) - log_gamma(a + 1.0) - log_gamma(k + 1.0));
}

std::vector<double> jacobi_sequence(int jmax, const JacobiParams& params, double x)
{
    check_degree(jmax);
    x = clamp_unit(x);
    const double a = params.alpha;
    const double b = params.beta;

    std::vector<double> p(static_cast<std::size_t>(jmax) + 1);
    p[0] = 1.0;
    if (jmax == 0) {
        return p;
    }
    p[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);

    const double ab2 = a * a - b * b;
    for (int n = 2; n <= jmax; ++n) {
        const double s = 2.0 * n + a + b;
        const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * ab2;
        const double c3 = (s - 2.0) * (s - 1.0) * s;
        const double c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
        p[n] = ((c2 + c3 * x) * p[n - 1] - c4 * p[n - 2]) / c1;
    }
    return p;
}

double jacobi_series(std::span<const double> weights, const JacobiParams& params, double x)
{
    if (weights.empty()) {
        return 0.0;
    }
    const int jmax = static_cast<int>(weights.size()) - 1;
    check_degree(jmax);
    x = clamp_unit(x);
    const double a = params.alpha;
    const double b = params.beta;
    const double ab2 = a * a - b * b;

    double prev = 1.0;
    double sum = weights[0];
    if (jmax == 0) {
        return sum;
    }
    double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    sum += weights[1] * cur;
    for (int n = 2; n <= jmax; ++n) {
        const double s = 2.0 * n + a + b;
        const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * ab2;
        const double c3 = (s - 2.0) * (s - 1.0) * s;
        const double c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
        const double next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
        prev = cur;
        cur = next;
        sum += weights[n] * cur;
    }
    return sum;
}

double jacobi_eval(int j, const JacobiParams& params, double x)
{
    return jacobi_sequence(j, params, x).back();
}

std::vector<double> gegenbauer_sequence(int lmax, double sigma, double x)
{
    if (!(sigma > 0.0)) {
        throw ParameterDomainError("Gegenbauer parameter sigma must be positive");
    }
    const double a = sigma - 0.5;
    auto p = jacobi_sequence(lmax, JacobiParams(a, a), x);
    // rescale so that P_l(1) = binom(l + 2 sigma - 1, l)
    for (int l = 1; l <= lmax; ++l) {
        const double lg = log_gamma(l + 2.0 * sigma) - log_gamma(2.0 * sigma)
                          - log_gamma(l + a + 1.0) + log_gamma(a + 1.0);
        p[l] *= std::exp(lg);
    }
    return p;
}

double gegenbauer_eval(const GegenbauerIndex& idx, double x)
{
    return gegenbauer_sequence(idx.degree, idx.sigma, x).back();
}

double gegenbauer_norm(double sigma, int l)
{
    if (!(sigma > 0.0)) {
        throw ParameterDomainError("gegenbauer_norm requires sigma > 0");
    }
    if (l < 0) {
        throw ParameterDomainError("gegenbauer_norm requires l >= 0");
    }
    const double lg = (1.0 - 2.0 * sigma) * std::numbers::ln2 + std::log(std::numbers::pi)
                      - 2.0 * log_gamma(sigma) + log_gamma(l + 2.0 * sigma)
                      - std::log(l + sigma) - log_gamma(l + 1.0);
    const double value = std::exp(lg);
    if (!std::isfinite(value)) {
        throw std::overflow_error("gegenbauer_norm overflows double for sigma="
                                  + std::to_string(sigma) + ", l=" + std::to_string(l));
    }
    return value;
}

double cesaro_binomial(int k, double delta)
{
    if (!(delta >= 0.0)) {
        throw ParameterDomainError("cesaro_binomial requires delta >= 0");
    }
    if (k < 0) {
        throw ParameterDomainError("cesaro_binomial requires k >= 0");
    }
    return binomial_real(k, delta);
}

} // namespace csphere
