#pragma once

// Geometry of the unit sphere in C^q: points, inner products, Haar sampling,
// the invariant measure as a (theta, phi) tensor rule for zonal integrands,
// L^r norms, convolution of zonal kernels and multiplier operators acting
// on sums of translated zonal kernels.

#include "csphere/kernels.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace csphere {

using Complex = std::complex<double>;
using UnitaryMatrix = Eigen::MatrixXcd;

/// Seedable stream; see make_stream for counter-based derivation.
using RandomStream = std::mt19937_64;

/// Independent stream for (seed, counter); identical inputs give identical streams.
RandomStream make_stream(std::uint64_t seed, std::uint64_t counter);

/// Combines case identifiers into a single stream counter.
std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts);

class SpherePoint {
public:
    /// Throws SphereDomainError unless sum |z_j|^2 = 1 within 1e-12 and q >= 2.
    explicit SpherePoint(std::vector<Complex> coords);

    /// Rescales a nonzero vector onto the sphere.
    static SpherePoint normalized(std::vector<Complex> coords);

    /// The coordinate unit vector e_k (0-based k).
    static SpherePoint basis(int q, int k);

    int q() const { return static_cast<int>(coords_.size()); }
    const std::vector<Complex>& coords() const { return coords_; }
    Complex operator[](int j) const { return coords_[static_cast<std::size_t>(j)]; }

private:
    std::vector<Complex> coords_;
};

/// <w, z> = sum_j w_j conj(z_j).
Complex inner_product(const SpherePoint& w, const SpherePoint& z);

/// Re <w, z>, the inner product on the associated real sphere S^{2q-1}.
double real_inner_product(const SpherePoint& w, const SpherePoint& z);

/// theta = arccos |<w,z>|, phi = arg <w,z> in [0, 2 pi); phi = 0 when |<w,z>| <= 1e-14.
Angles angles_from_pair(const SpherePoint& w, const SpherePoint& z);

/// arccos Re <w, z>.
double geodesic_distance(const SpherePoint& w, const SpherePoint& z);

SpherePoint random_point(int q, RandomStream& rng);

/// Haar-distributed unitary matrix (QR of a complex Gaussian matrix, phases fixed).
UnitaryMatrix random_unitary(int q, RandomStream& rng);

SpherePoint apply(const UnitaryMatrix& u, const SpherePoint& z);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Tensor rule for integrands of the standard-form angles against the
/// normalized invariant measure: theta weights carry cos(theta) sin(theta)^{2q-3},
/// phi is equispaced on [0, 2 pi), and normalization = (q-1)/pi.
struct QuadratureRule {
    int q = 2;
    std::vector<double> theta_nodes;
    std::vector<double> theta_weights;
    std::vector<double> phi_nodes;
    std::vector<double> phi_weights;
    double normalization = 1.0;

    std::size_t size() const { return theta_nodes.size() * phi_nodes.size(); }
};

QuadratureRule zonal_quadrature(int q, int n_theta, int n_phi);

/// Nodes used for L^1 norms of degree-n kernels: max(256, 16 n) in each direction.
int default_node_count(int degree);

using AngleFunction = std::function<double(const Angles&)>;
using ComplexAngleFunction = std::function<Complex(const Angles&)>;

/// Threaded reductions split work by theta row and sum rows in index order,
/// so results do not depend on the worker count.
double integrate(const AngleFunction& f, const QuadratureRule& rule, int workers = 1);
Complex integrate(const ComplexAngleFunction& f, const QuadratureRule& rule, int workers = 1);

/// L^r(mu) norm; r = +infinity gives the maximum over the nodes.
double zonal_lr_norm(const AngleFunction& f, double r, const QuadratureRule& rule, int workers = 1);
double zonal_lr_norm(const ZonalKernel& k, double r, const QuadratureRule& rule, int workers = 1);

/// Rule for functions of the real inner product t = cos(psi) alone: the
/// normalized measure pushed forward to psi in [0, pi] has density
/// proportional to sin(psi)^{2q-2}. Weights include the normalization.
struct LineRule {
    int q = 2;
    std::vector<double> psi_nodes;
    std::vector<double> weights;
};

/// Plain Gauss-Legendre rule in psi.
LineRule zonal_line_rule(int q, int n_nodes);

/// Composite Gauss-Legendre rule in psi, split at the sign changes of k(cos psi)
/// so that |k|^r is smooth on every piece.
LineRule adapted_line_rule(const ZonalKernel& k, int nodes_per_piece);

double zonal_lr_norm(const ZonalKernel& k, double r, const LineRule& rule, int workers = 1);

/// Sign changes of k(cos psi) on (0, pi), located by scanning and bisection.
std::vector<double> kernel_sign_changes(const ZonalKernel& k, int scan_points);

/// Coefficient-wise product against {h_l}.
ZonalKernel convolve_zonal(const ZonalKernel& f, const ZonalKernel& g);

/// Product rule for y on the sphere realizing
///   (f * g)(x, z) = int f(<x,y>) g(<y,z>) dmu(y)
/// as a four-dimensional tensor quadrature: y is written in standard form
/// relative to x, and its component orthogonal to x in standard form relative
/// to the direction of z orthogonal to x.
class TwoPointQuadrature {
public:
    struct Node {
        Complex xy; // <x, y>
        Complex yz; // <y, z>
        double weight;
    };

    TwoPointQuadrature(const SpherePoint& x, const SpherePoint& z, int n_theta, int n_phi);

    const std::vector<Node>& nodes() const { return nodes_; }

    Complex integrate(const std::function<Complex(Complex, Complex)>& f) const;

private:
    std::vector<Node> nodes_;
};

/// Direct quadrature of int f(Re<x,y>) g(Re<y,z>) dmu(y) for real zonal kernels.
double convolve_by_quadrature(const ZonalKernel& f, const ZonalKernel& g, const SpherePoint& x,
                              const SpherePoint& z, int n_theta, int n_phi);

/// p(x) = sum_i K_i(Re <x, c_i>), a sum of translated zonal kernels.
struct ZonalPolynomial {
    int q = 2;
    std::vector<SpherePoint> centers;
    std::vector<ZonalKernel> components;

    double operator()(const SpherePoint& x) const;
    int degree() const;
};

/// Multiplies the degree-l coefficient of every component by seq[l].
ZonalPolynomial apply_multiplier(const MultiplierSequence& seq, const ZonalPolynomial& p);

/// Exact L^2 norm from the reproducing property, ||p||_2^2 = sum_{ij} sum_l a_il a_jl h_l(c_i . c_j).
double l2_norm_exact(const ZonalPolynomial& p);

/// Sample estimate of ||p||_r: (mean |p|^r)^{1/r} over points, or max for r = infinity.
double sampled_lr_norm(const ZonalPolynomial& p, double r, const std::vector<SpherePoint>& points,
                       int workers = 1);

/// Random element of P_n: 1..max_centers uniform centers, coefficients N(0,1)/sqrt(d_l).
ZonalPolynomial random_polynomial(int q, int n, RandomStream& rng, int max_centers = 8);

/// Random element of H_l: translated copies of h_l with N(0,1) weights.
ZonalPolynomial random_harmonic(int q, int l, RandomStream& rng, int centers = 8);

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

} // namespace csphere
