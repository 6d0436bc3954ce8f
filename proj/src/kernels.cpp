#include "csphere/kernels.hpp"

#include "csphere/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace csphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double zonal_alpha(int q)
{
    return q - 1.5;
}

} // namespace

Angles::Angles(double theta_, double phi_) : theta(theta_), phi(phi_)
{
    constexpr double slack = 1e-12;
    if (!(theta >= -slack && theta <= std::numbers::pi / 2 + slack)) {
        throw ParameterDomainError("theta must lie in [0, pi/2], got " + std::to_string(theta));
    }
    theta = std::clamp(theta, 0.0, std::numbers::pi / 2);
    if (!std::isfinite(phi)) {
        throw ParameterDomainError("phi must be finite");
    }
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) {
        phi += kTwoPi;
    }
    if (phi >= kTwoPi) {
        phi = 0.0;
    }
}

std::complex<double> Angles::inner() const
{
    return std::polar(std::cos(theta), phi);
}

double Angles::real_inner() const
{
    return std::cos(theta) * std::cos(phi);
}

ZonalKernel::ZonalKernel(int q, std::vector<double> coeffs) : q_(q), coeffs_(std::move(coeffs))
{
    require_sphere_q(q);
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
    const double a = zonal_alpha(q);
    weights_.resize(coeffs_.size());
    for (std::size_t l = 0; l < coeffs_.size(); ++l) {
        const int li = static_cast<int>(l);
        weights_[l] = coeffs_[l] * to_double(dim_degree(li, q)) / binomial_real(li, a);
    }
}

double ZonalKernel::coeff(int l) const
{
    if (l < 0 || l > degree()) {
        return 0.0;
    }
    return coeffs_[static_cast<std::size_t>(l)];
}

double ZonalKernel::operator()(double t) const
{
    const double a = zonal_alpha(q_);
    return jacobi_series(weights_, JacobiParams(a, a), t);
}

double ZonalKernel::pole_value() const
{
    double s = 0.0;
    for (std::size_t l = 0; l < coeffs_.size(); ++l) {
        s += coeffs_[l] * to_double(dim_degree(static_cast<int>(l), q_));
    }
    return s;
}

MultiplierSequence::MultiplierSequence(std::vector<double> values, int degree_cut)
    : values_(std::move(values)), degree_cut_(degree_cut)
{
    if (values_.empty()) {
        throw ContractError("multiplier sequence must be nonempty");
    }
}

double MultiplierSequence::operator[](int k) const
{
    if (k < 0 || k > top()) {
        return 0.0;
    }
    return values_[static_cast<std::size_t>(k)];
}

std::complex<double> kernel_harm(int m, int n, int q, const Angles& a)
{
    const HarmIndex idx(m, n, q);
    const int k = std::abs(m - n);
    const int j = std::min(m, n);
    const JacobiParams params(q - 2.0, static_cast<double>(k));
    const double ratio = jacobi_eval(j, params, std::cos(2.0 * a.theta)) / binomial_real(j, q - 2.0);
    const double modulus = to_double(dim_harm(idx)) * std::pow(std::cos(a.theta), k) * ratio;
    return std::polar(1.0, (m - n) * a.phi) * modulus;
}

std::vector<double> kernel_degree_sequence(int lmax, int q, double t)
{
    require_sphere_q(q);
    const double a = zonal_alpha(q);
    auto p = jacobi_sequence(lmax, JacobiParams(a, a), t);
    for (int l = 0; l <= lmax; ++l) {
        p[l] *= to_double(dim_degree(l, q)) / binomial_real(l, a);
    }
    return p;
}

double kernel_degree(int l, int q, double t)
{
    return kernel_degree_sequence(l, q, t).back();
}

std::complex<double> bivariate_sum(int l, int q, const Angles& a)
{
    std::complex<double> s = 0.0;
    for (int m = 0; m <= l; ++m) {
        s += kernel_harm(m, l - m, q, a);
    }
    return s;
}

double verify_bivariate(int l, int q, const Angles& a)
{
    const std::complex<double> lhs = bivariate_sum(l, q, a);
    const double rhs = kernel_degree(l, q, a.real_inner());
    return std::abs(lhs - rhs) / std::max(1.0, to_double(dim_degree(l, q)));
}

double full_kernel_alpha(int q)
{
    return q - 0.5;
}

double full_kernel_beta(int q)
{
    return q - 1.5;
}

double kernel_full(int n, int q, double t)
{
    require_sphere_q(q);
    const JacobiParams params(full_kernel_alpha(q), full_kernel_beta(q));
    return to_double(dim_poly(n, q)) * jacobi_eval(n, params, t) / binomial_real(n, params.alpha);
}

ZonalKernel cesaro_kernel(int n, double delta, int q)
{
    if (n < 0) {
        throw ContractError("Cesaro degree must be nonnegative");
    }
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    const double top = cesaro_binomial(n, delta);
    for (int l = 0; l <= n; ++l) {
        c[l] = cesaro_binomial(n - l, delta) / top;
    }
    return ZonalKernel(q, std::move(c));
}

double bernstein_multiplier(int l, int q, double gamma)
{
    require_sphere_q(q);
    if (l < 0) {
        throw ContractError("degree must be nonnegative");
    }
    if (l == 0) {
        if (gamma < 0.0) {
            throw ParameterDomainError("multiplier is singular at l = 0 for gamma < 0");
        }
        return gamma == 0.0 ? 1.0 : 0.0;
    }
    return std::pow(static_cast<double>(l) * (l + 2.0 * q - 1.0), gamma / 2.0);
}

double cutoff_g(double x, int n, int q)
{
    require_sphere_q(q);
    if (n < 1) {
        throw ContractError("cutoff requires n >= 1");
    }
    if (x <= n) {
        return 1.0;
    }
    if (x >= 2.0 * n) {
        return 0.0;
    }
    // 1 - I_s(a, a) = sum_{j<a} binom(2a-1, j) s^j (1-s)^{2a-1-j}
    const int a = q + 2;
    const int top = 2 * a - 1;
    const double s = (x - n) / n;
    double g = 0.0;
    for (int j = 0; j < a; ++j) {
        g += to_double(binomial(top, j)) * std::pow(s, j) * std::pow(1.0 - s, top - j);
    }
    return g;
}

double cutoff_constant(int n, int q)
{
    require_sphere_q(q);
    if (n < 1) {
        throw ContractError("cutoff requires n >= 1");
    }
    const double lg = log_gamma(2.0 * q + 4.0) - 2.0 * log_gamma(q + 2.0)
                      - (2.0 * q + 3.0) * std::log(static_cast<double>(n));
    return std::exp(lg);
}

MultiplierSequence build_rho(int n, int m, int q, double gamma)
{
    require_sphere_q(q);
    if (n < 1) {
        throw ContractError("build_rho requires n >= 1");
    }
    if (m < 2 * n + q + 1) {
        throw ContractError("build_rho requires m >= 2n + q + 1 (n=" + std::to_string(n)
                            + ", q=" + std::to_string(q) + ", m=" + std::to_string(m) + ")");
    }
    std::vector<double> rho(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = 0; k < 2 * n; ++k) {
        rho[k] = cutoff_g(k, n, q) * bernstein_multiplier(k, q, gamma);
    }
    return MultiplierSequence(std::move(rho), n);
}

double finite_difference(const MultiplierSequence& seq, int j, int k)
{
    if (j < 0) {
        throw ContractError("difference order must be nonnegative");
    }
    std::vector<double> v(static_cast<std::size_t>(j) + 1);
    for (int i = 0; i <= j; ++i) {
        v[i] = seq[k + i];
    }
    for (int order = 1; order <= j; ++order) {
        for (int i = 0; i + order <= j; ++i) {
            v[i] = v[i] - v[i + 1];
        }
    }
    return v[0];
}

AbelKernel kernel_Km_abel(const MultiplierSequence& seq, int q)
{
    require_sphere_q(q);
    const int m = seq.top();
    for (int l = 0; l <= q; ++l) {
        const double b = finite_difference(seq, l, m - l);
        if (b != 0.0) {
            throw AssemblyError("Abel boundary term Delta^" + std::to_string(l) + " rho_"
                                + std::to_string(m - l) + " = " + std::to_string(b)
                                + " does not vanish");
        }
    }

    std::vector<double> diffs(static_cast<std::size_t>(m) + 1);
    for (int l = 0; l <= m; ++l) {
        diffs[l] = finite_difference(seq, q + 1, l);
    }
    std::vector<double> binom(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        binom[k] = cesaro_binomial(k, q);
    }

    // Delta^{q+1} rho_l C_l^q S_l^q contributes Delta^{q+1} rho_l C_{l-j}^q to h_j.
    std::vector<double> coeffs(static_cast<std::size_t>(m) + 1, 0.0);
    for (int j = 0; j <= m; ++j) {
        double s = 0.0;
        for (int l = j; l <= m; ++l) {
            s += diffs[l] * binom[l - j];
        }
        coeffs[j] = s;
    }
    return AbelKernel{ZonalKernel(q, std::move(coeffs)), ZonalKernel(q, seq.values())};
}

} // namespace csphere
