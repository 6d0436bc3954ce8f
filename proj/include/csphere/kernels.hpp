#pragma once

// Zonal kernels on the complex sphere: the reproducing kernels kappa_{m,n}
// of harm(m,n) and h_l of H_l, the kernel of P_n, Cesaro means, and the
// smooth-cutoff multiplier construction with its Abel-summed form.

#include "csphere/structure.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace csphere {

/// Standard-form angles of a complex inner product <w,z> = cos(theta) e^{i phi}.
/// theta in [0, pi/2], phi in [0, 2 pi).
struct Angles {
    double theta;
    double phi;

    /// phi is reduced modulo 2 pi; theta outside [0, pi/2] (beyond 1e-12) throws.
    Angles(double theta_, double phi_);

    std::complex<double> inner() const;

    /// Real inner product on the associated real sphere, cos(theta) cos(phi).
    double real_inner() const;
};

/// A zonal function sum_l c_l h_l(t) of the real inner product t.
class ZonalKernel {
public:
    ZonalKernel(int q, std::vector<double> coeffs);

    int q() const { return q_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int l) const;

    double operator()(double t) const;

    /// Value at t = 1: sum_l c_l d_l.
    double pole_value() const;

private:
    int q_;
    std::vector<double> coeffs_;
    // c_l d_l / P_l^{(a,a)}(1), a = q - 3/2, so that the kernel is
    // sum_l weight_l P_l^{(a,a)}(t)
    std::vector<double> weights_;
};

/// Finite multiplier sequence rho_0..rho_top; reads beyond the top are 0.
class MultiplierSequence {
public:
    MultiplierSequence(std::vector<double> values, int degree_cut);

    const std::vector<double>& values() const { return values_; }
    int degree_cut() const { return degree_cut_; }
    int top() const { return static_cast<int>(values_.size()) - 1; }

    double operator[](int k) const;

private:
    std::vector<double> values_;
    int degree_cut_;
};

class AssemblyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A caller-side precondition was not met.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::complex<double> kernel_harm(int m, int n, int q, const Angles& a);

/// h_l(t) = d_l P_l^{(q-1)}(t) / P_l^{(q-1)}(1).
double kernel_degree(int l, int q, double t);

/// h_0(t) .. h_lmax(t).
std::vector<double> kernel_degree_sequence(int lmax, int q, double t);

/// sum_{m+n=l} kappa_{m,n}(a).
std::complex<double> bivariate_sum(int l, int q, const Angles& a);

/// |sum_{m+n=l} kappa_{m,n}(a) - h_l(cos theta cos phi)| / max(1, d_l),
/// the imaginary part of the sum included.
double verify_bivariate(int l, int q, const Angles& a);

/// Jacobi exponents (q - 1/2, q - 3/2) of the closed form of sum_{l<=n} h_l.
double full_kernel_alpha(int q);
double full_kernel_beta(int q);

/// r_n(t) = sum_{l<=n} h_l(t) in closed form, t_n P_n^{(q-1/2,q-3/2)}(t) / P_n(1).
double kernel_full(int n, int q, double t);

/// S_n^delta as coefficients C_{n-l}^delta / C_n^delta against h_l.
ZonalKernel cesaro_kernel(int n, double delta, int q);

/// lambda_l = (l (l + 2q - 1))^{gamma/2}.
double bernstein_multiplier(int l, int q, double gamma);

/// g(x) = 1 on [0, n], 1 - I_s(q+2, q+2) with s = (x-n)/n on [n, 2n], 0 beyond.
double cutoff_g(double x, int n, int q);

/// C_{n,q} = (2q+3)! / (n^{2q+3} ((q+1)!)^2).
double cutoff_constant(int n, int q);

/// rho_k = g(k) (k (k + 2q - 1))^{gamma/2} for k = 0..m. Requires m >= 2n + q + 1.
MultiplierSequence build_rho(int n, int m, int q, double gamma);

/// j-th forward difference with Delta rho_k = rho_k - rho_{k+1}.
double finite_difference(const MultiplierSequence& seq, int j, int k);

struct AbelKernel {
    ZonalKernel abel;   // sum_{l>=0} Delta^{q+1} rho_l C_l^q S_l^q
    ZonalKernel direct; // sum_l rho_l h_l
};

/// Throws AssemblyError unless Delta^l rho_{m-l} = 0 for l = 0..q.
AbelKernel kernel_Km_abel(const MultiplierSequence& seq, int q);

} // namespace csphere
