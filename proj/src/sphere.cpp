#include "csphere/sphere.hpp"

#include "csphere/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace csphere {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Complex complex_normal(RandomStream& rng)
{
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

// Row-wise reduction over the tensor rule: row i contributes
// theta_weight_i * sum_j phi_weight_j * f(i, j). Rows are summed in order.
template <typename T, typename RowFn>
T reduce_rows(const QuadratureRule& rule, int workers, RowFn&& row_value)
{
    const std::size_t rows = rule.theta_nodes.size();
    std::vector<T> partial(rows);
    parallel_for(rows, workers, [&](std::size_t i) { partial[i] = row_value(i); });
    T total{};
    for (std::size_t i = 0; i < rows; ++i) {
        total += rule.theta_weights[i] * partial[i];
    }
    return rule.normalization * total;
}

double row_max(const QuadratureRule& rule, int workers,
               const std::function<double(std::size_t, std::size_t)>& value)
{
    const std::size_t rows = rule.theta_nodes.size();
    std::vector<double> partial(rows, 0.0);
    parallel_for(rows, workers, [&](std::size_t i) {
        double mx = 0.0;
        for (std::size_t j = 0; j < rule.phi_nodes.size(); ++j) {
            mx = std::max(mx, std::abs(value(i, j)));
        }
        partial[i] = mx;
    });
    return *std::max_element(partial.begin(), partial.end());
}

double lr_from_values(const QuadratureRule& rule, double r, int workers,
                      const std::function<double(std::size_t, std::size_t)>& value)
{
    if (!(r >= 1.0)) {
        throw SphereDomainError("L^r norm requires r >= 1");
    }
    if (std::isinf(r)) {
        return row_max(rule, workers, value);
    }
    const double s = reduce_rows<double>(rule, workers, [&](std::size_t i) {
        double row = 0.0;
        for (std::size_t j = 0; j < rule.phi_nodes.size(); ++j) {
            const double v = std::abs(value(i, j));
            row += rule.phi_weights[j] * (r == 1.0 ? v : std::pow(v, r));
        }
        return row;
    });
    return r == 1.0 ? s : std::pow(s, 1.0 / r);
}

} // namespace

RandomStream make_stream(std::uint64_t seed, std::uint64_t counter)
{
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(counter));
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
    return RandomStream(seq);
}

std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts)
{
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto p : parts) {
        h = splitmix64(h ^ p);
    }
    return h;
}

SpherePoint::SpherePoint(std::vector<Complex> coords) : coords_(std::move(coords))
{
    require_sphere_q(static_cast<int>(coords_.size()));
    double n2 = 0.0;
    for (const auto& c : coords_) {
        n2 += std::norm(c);
    }
    if (std::abs(n2 - 1.0) > 1e-12) {
        throw SphereDomainError("point is not on the unit sphere: |z|^2 = " + std::to_string(n2));
    }
}

SpherePoint SpherePoint::normalized(std::vector<Complex> coords)
{
    double n2 = 0.0;
    for (const auto& c : coords) {
        n2 += std::norm(c);
    }
    if (!(n2 > 0.0)) {
        throw SphereDomainError("cannot normalize the zero vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : coords) {
        c *= inv;
    }
    return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::basis(int q, int k)
{
    require_sphere_q(q);
    if (k < 0 || k >= q) {
        throw SphereDomainError("basis index out of range");
    }
    std::vector<Complex> c(static_cast<std::size_t>(q), 0.0);
    c[static_cast<std::size_t>(k)] = 1.0;
    return SpherePoint(std::move(c));
}

Complex inner_product(const SpherePoint& w, const SpherePoint& z)
{
    if (w.q() != z.q()) {
        throw SphereDomainError("points live in different dimensions");
    }
    Complex s = 0.0;
    for (int j = 0; j < w.q(); ++j) {
        s += w[j] * std::conj(z[j]);
    }
    return s;
}

double real_inner_product(const SpherePoint& w, const SpherePoint& z)
{
    return inner_product(w, z).real();
}

Angles angles_from_pair(const SpherePoint& w, const SpherePoint& z)
{
    const Complex ip = inner_product(w, z);
    const double r = std::abs(ip);
    const double theta = std::acos(std::min(1.0, r));
    if (r <= 1e-14) {
        return Angles(theta, 0.0);
    }
    double phi = std::arg(ip);
    if (phi < 0.0) {
        phi += 2.0 * kPi;
    }
    return Angles(theta, phi);
}

double geodesic_distance(const SpherePoint& w, const SpherePoint& z)
{
    return std::acos(std::clamp(real_inner_product(w, z), -1.0, 1.0));
}

SpherePoint random_point(int q, RandomStream& rng)
{
    require_sphere_q(q);
    std::vector<Complex> c(static_cast<std::size_t>(q));
    for (auto& v : c) {
        v = complex_normal(rng);
    }
    return SpherePoint::normalized(std::move(c));
}

UnitaryMatrix random_unitary(int q, RandomStream& rng)
{
    require_sphere_q(q);
    UnitaryMatrix g(q, q);
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < q; ++i) {
            g(i, j) = complex_normal(rng);
        }
    }
    Eigen::HouseholderQR<UnitaryMatrix> qr(g);
    UnitaryMatrix qmat = qr.householderQ();
    const UnitaryMatrix& r = qr.matrixQR();
    for (int j = 0; j < q; ++j) {
        const Complex d = r(j, j);
        const double ad = std::abs(d);
        qmat.col(j) *= ad > 0.0 ? d / ad : Complex(1.0);
    }
    return qmat;
}

SpherePoint apply(const UnitaryMatrix& u, const SpherePoint& z)
{
    if (u.rows() != z.q() || u.cols() != z.q()) {
        throw SphereDomainError("matrix and point dimensions differ");
    }
    std::vector<Complex> out(static_cast<std::size_t>(z.q()), 0.0);
    for (int i = 0; i < z.q(); ++i) {
        for (int j = 0; j < z.q(); ++j) {
            out[i] += u(i, j) * z[j];
        }
    }
    return SpherePoint::normalized(std::move(out));
}

GaussRule gauss_legendre(int n, double a, double b)
{
    if (n < 1) {
        throw SphereDomainError("Gauss-Legendre rule needs at least one node");
    }
    GaussRule rule;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (n == 1) {
        rule.nodes = {mid};
        rule.weights = {b - a};
        return rule;
    }
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // P_n(x) and P_n'(x) by the Legendre recurrence
    const auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

QuadratureRule zonal_quadrature(int q, int n_theta, int n_phi)
{
    require_sphere_q(q);
    if (n_theta < 8 || n_phi < 8) {
        throw SphereDomainError("zonal quadrature needs at least 8 nodes per direction");
    }
    QuadratureRule rule;
    rule.q = q;
    const GaussRule gl = gauss_legendre(n_theta, 0.0, kPi / 2.0);
    rule.theta_nodes = gl.nodes;
    rule.theta_weights.resize(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double th = gl.nodes[i];
        rule.theta_weights[i] = gl.weights[i] * std::cos(th) * std::pow(std::sin(th), 2 * q - 3);
    }
    rule.phi_nodes.resize(static_cast<std::size_t>(n_phi));
    rule.phi_weights.assign(static_cast<std::size_t>(n_phi), 2.0 * kPi / n_phi);
    for (int j = 0; j < n_phi; ++j) {
        rule.phi_nodes[j] = 2.0 * kPi * j / n_phi;
    }
    rule.normalization = (q - 1.0) / kPi;
    return rule;
}

int default_node_count(int degree)
{
    return std::max(256, 16 * degree);
}

double integrate(const AngleFunction& f, const QuadratureRule& rule, int workers)
{
    return reduce_rows<double>(rule, workers, [&](std::size_t i) {
        double row = 0.0;
        for (std::size_t j = 0; j < rule.phi_nodes.size(); ++j) {
            row += rule.phi_weights[j] * f(Angles(rule.theta_nodes[i], rule.phi_nodes[j]));
        }
        return row;
    });
}

Complex integrate(const ComplexAngleFunction& f, const QuadratureRule& rule, int workers)
{
    return reduce_rows<Complex>(rule, workers, [&](std::size_t i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < rule.phi_nodes.size(); ++j) {
            row += rule.phi_weights[j] * f(Angles(rule.theta_nodes[i], rule.phi_nodes[j]));
        }
        return row;
    });
}

double zonal_lr_norm(const AngleFunction& f, double r, const QuadratureRule& rule, int workers)
{
    return lr_from_values(rule, r, workers, [&](std::size_t i, std::size_t j) {
        return f(Angles(rule.theta_nodes[i], rule.phi_nodes[j]));
    });
}

double zonal_lr_norm(const ZonalKernel& k, double r, const QuadratureRule& rule, int workers)
{
    if (k.q() != rule.q) {
        throw SphereDomainError("kernel and quadrature rule use different q");
    }
    std::vector<double> cos_theta(rule.theta_nodes.size());
    std::vector<double> cos_phi(rule.phi_nodes.size());
    std::transform(rule.theta_nodes.begin(), rule.theta_nodes.end(), cos_theta.begin(),
                   [](double v) { return std::cos(v); });
    std::transform(rule.phi_nodes.begin(), rule.phi_nodes.end(), cos_phi.begin(),
                   [](double v) { return std::cos(v); });
    return lr_from_values(rule, r, workers, [&](std::size_t i, std::size_t j) {
        return k(cos_theta[i] * cos_phi[j]);
    });
}

namespace {

double line_normalization(int q)
{
    // int_0^pi sin^m = sqrt(pi) Gamma((m+1)/2) / Gamma(m/2 + 1), m = 2q - 2
    const double m = 2.0 * q - 2.0;
    return std::exp(-0.5 * std::log(kPi) - log_gamma((m + 1.0) / 2.0) + log_gamma(m / 2.0 + 1.0));
}

void append_piece(LineRule& rule, const GaussRule& unit, double a, double b, double norm)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < unit.nodes.size(); ++i) {
        const double psi = mid + half * unit.nodes[i];
        rule.psi_nodes.push_back(psi);
        rule.weights.push_back(norm * half * unit.weights[i] * std::pow(std::sin(psi), 2 * rule.q - 2));
    }
}

} // namespace

LineRule zonal_line_rule(int q, int n_nodes)
{
    require_sphere_q(q);
    if (n_nodes < 1) {
        throw SphereDomainError("line rule needs at least one node");
    }
    LineRule rule;
    rule.q = q;
    append_piece(rule, gauss_legendre(n_nodes, -1.0, 1.0), 0.0, kPi, line_normalization(q));
    return rule;
}

std::vector<double> kernel_sign_changes(const ZonalKernel& k, int scan_points)
{
    if (scan_points < 2) {
        throw SphereDomainError("sign scan needs at least two points");
    }
    std::vector<double> roots;
    const auto f = [&](double psi) { return k(std::cos(psi)); };
    double a = 0.0;
    double fa = f(a);
    for (int i = 1; i <= scan_points; ++i) {
        const double b = kPi * i / scan_points;
        const double fb = f(b);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            double lo = a;
            double hi = b;
            double flo = fa;
            for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon(); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        if (fb != 0.0) {
            a = b;
            fa = fb;
        }
    }
    return roots;
}

LineRule adapted_line_rule(const ZonalKernel& k, int nodes_per_piece)
{
    if (nodes_per_piece < 1) {
        throw SphereDomainError("line rule needs at least one node per piece");
    }
    LineRule rule;
    rule.q = k.q();
    const auto roots = kernel_sign_changes(k, std::max(256, 64 * (k.degree() + 1)));
    std::vector<double> breaks{0.0};
    breaks.insert(breaks.end(), roots.begin(), roots.end());
    breaks.push_back(kPi);
    const GaussRule unit = gauss_legendre(nodes_per_piece, -1.0, 1.0);
    const double norm = line_normalization(k.q());
    // pieces without a sign change still oscillate; cap their length at pi/(deg+1)
    const double max_len = kPi / (k.degree() + 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double len = breaks[i + 1] - breaks[i];
        if (!(len > 0.0)) {
            continue;
        }
        const int parts = std::max(1, static_cast<int>(std::ceil(len / max_len)));
        for (int p = 0; p < parts; ++p) {
            const double a = breaks[i] + len * p / parts;
            const double b = p + 1 == parts ? breaks[i + 1] : breaks[i] + len * (p + 1) / parts;
            append_piece(rule, unit, a, b, norm);
        }
    }
    return rule;
}

double zonal_lr_norm(const ZonalKernel& k, double r, const LineRule& rule, int workers)
{
    if (k.q() != rule.q) {
        throw SphereDomainError("kernel and line rule use different q");
    }
    if (!(r >= 1.0)) {
        throw SphereDomainError("L^r norm requires r >= 1");
    }
    std::vector<double> values(rule.psi_nodes.size());
    parallel_for(values.size(), workers,
                 [&](std::size_t i) { values[i] = std::abs(k(std::cos(rule.psi_nodes[i]))); });
    if (std::isinf(r)) {
        return *std::max_element(values.begin(), values.end());
    }
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += rule.weights[i] * (r == 1.0 ? values[i] : std::pow(values[i], r));
    }
    return r == 1.0 ? s : std::pow(s, 1.0 / r);
}

ZonalKernel convolve_zonal(const ZonalKernel& f, const ZonalKernel& g)
{
    if (f.q() != g.q()) {
        throw SphereDomainError("cannot convolve kernels with different q");
    }
    const int deg = std::min(f.degree(), g.degree());
    std::vector<double> c(static_cast<std::size_t>(deg) + 1);
    for (int l = 0; l <= deg; ++l) {
        c[l] = f.coeff(l) * g.coeff(l);
    }
    return ZonalKernel(f.q(), std::move(c));
}

TwoPointQuadrature::TwoPointQuadrature(const SpherePoint& x, const SpherePoint& z, int n_theta,
                                       int n_phi)
{
    const int q = x.q();
    if (z.q() != q) {
        throw SphereDomainError("points live in different dimensions");
    }
    if (n_theta < 1 || n_phi < 1) {
        throw SphereDomainError("two-point quadrature needs positive node counts");
    }
    const Complex xz = inner_product(x, z);
    std::vector<Complex> zperp(static_cast<std::size_t>(q));
    double rho2 = 0.0;
    for (int j = 0; j < q; ++j) {
        zperp[j] = z[j] - std::conj(xz) * x[j];
        rho2 += std::norm(zperp[j]);
    }
    const double rho = std::sqrt(std::max(0.0, rho2));

    const GaussRule outer = gauss_legendre(n_theta, 0.0, kPi / 2.0);
    std::vector<double> outer_w(outer.nodes.size());
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
        const double th = outer.nodes[i];
        outer_w[i] = outer.weights[i] * std::cos(th) * std::pow(std::sin(th), 2 * q - 3)
                     * (q - 1.0) / kPi;
    }

    // <y', u> for y' uniform on the unit sphere of the complement of x
    // (complex dimension q-1); for q = 2 this is a uniform phase.
    std::vector<double> inner_cos{1.0};
    std::vector<double> inner_w{1.0};
    if (q >= 3) {
        const GaussRule in = gauss_legendre(n_theta, 0.0, kPi / 2.0);
        inner_cos.resize(in.nodes.size());
        inner_w.resize(in.nodes.size());
        for (std::size_t i = 0; i < in.nodes.size(); ++i) {
            const double th = in.nodes[i];
            inner_cos[i] = std::cos(th);
            inner_w[i] = in.weights[i] * std::cos(th) * std::pow(std::sin(th), 2 * q - 5)
                         * (q - 2.0) / kPi;
        }
    }

    const double dphi = 2.0 * kPi / n_phi;
    const double inner_dphi = q >= 3 ? dphi : dphi / (2.0 * kPi);
    nodes_.reserve(outer.nodes.size() * inner_cos.size() * static_cast<std::size_t>(n_phi)
                   * static_cast<std::size_t>(n_phi));
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
        const double c = std::cos(outer.nodes[i]);
        const double s = std::sin(outer.nodes[i]);
        for (int a = 0; a < n_phi; ++a) {
            const Complex e = std::polar(1.0, a * dphi);
            const Complex xy = c * std::conj(e);
            const Complex head = c * e * xz;
            for (std::size_t k = 0; k < inner_cos.size(); ++k) {
                const double w = outer_w[i] * dphi * inner_w[k] * inner_dphi;
                for (int b = 0; b < n_phi; ++b) {
                    const Complex tail = s * rho * inner_cos[k] * std::polar(1.0, b * dphi);
                    nodes_.push_back({xy, head + tail, w});
                }
            }
        }
    }
}

Complex TwoPointQuadrature::integrate(const std::function<Complex(Complex, Complex)>& f) const
{
    Complex s = 0.0;
    for (const auto& node : nodes_) {
        s += node.weight * f(node.xy, node.yz);
    }
    return s;
}

double convolve_by_quadrature(const ZonalKernel& f, const ZonalKernel& g, const SpherePoint& x,
                              const SpherePoint& z, int n_theta, int n_phi)
{
    const TwoPointQuadrature rule(x, z, n_theta, n_phi);
    double s = 0.0;
    for (const auto& node : rule.nodes()) {
        s += node.weight * f(std::clamp(node.xy.real(), -1.0, 1.0))
             * g(std::clamp(node.yz.real(), -1.0, 1.0));
    }
    return s;
}

double ZonalPolynomial::operator()(const SpherePoint& x) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        s += components[i](std::clamp(real_inner_product(x, centers[i]), -1.0, 1.0));
    }
    return s;
}

int ZonalPolynomial::degree() const
{
    int d = 0;
    for (const auto& c : components) {
        d = std::max(d, c.degree());
    }
    return d;
}

ZonalPolynomial apply_multiplier(const MultiplierSequence& seq, const ZonalPolynomial& p)
{
    if (p.degree() > seq.top()) {
        throw SphereDomainError("polynomial degree " + std::to_string(p.degree())
                                + " exceeds multiplier sequence top " + std::to_string(seq.top()));
    }
    ZonalPolynomial out;
    out.q = p.q;
    out.centers = p.centers;
    out.components.reserve(p.components.size());
    for (const auto& k : p.components) {
        std::vector<double> c = k.coeffs();
        for (std::size_t l = 0; l < c.size(); ++l) {
            c[l] *= seq[static_cast<int>(l)];
        }
        out.components.emplace_back(k.q(), std::move(c));
    }
    return out;
}

double l2_norm_exact(const ZonalPolynomial& p)
{
    const int deg = p.degree();
    double s = 0.0;
    for (std::size_t i = 0; i < p.centers.size(); ++i) {
        for (std::size_t j = 0; j < p.centers.size(); ++j) {
            const double t = std::clamp(real_inner_product(p.centers[i], p.centers[j]), -1.0, 1.0);
            const auto h = kernel_degree_sequence(deg, p.q, t);
            for (int l = 0; l <= deg; ++l) {
                s += p.components[i].coeff(l) * p.components[j].coeff(l) * h[l];
            }
        }
    }
    return std::sqrt(std::max(0.0, s));
}

double sampled_lr_norm(const ZonalPolynomial& p, double r, const std::vector<SpherePoint>& points,
                       int workers)
{
    if (!(r >= 1.0)) {
        throw SphereDomainError("L^r norm requires r >= 1");
    }
    if (points.empty()) {
        throw SphereDomainError("sampled norm needs at least one point");
    }
    std::vector<double> values(points.size());
    parallel_for(points.size(), workers, [&](std::size_t i) { values[i] = std::abs(p(points[i])); });
    if (std::isinf(r)) {
        return *std::max_element(values.begin(), values.end());
    }
    double s = 0.0;
    for (double v : values) {
        s += std::pow(v, r);
    }
    return std::pow(s / static_cast<double>(values.size()), 1.0 / r);
}

ZonalPolynomial random_polynomial(int q, int n, RandomStream& rng, int max_centers)
{
    require_sphere_q(q);
    if (n < 0 || max_centers < 1) {
        throw SphereDomainError("random_polynomial needs n >= 0 and at least one center");
    }
    std::uniform_int_distribution<int> count(1, max_centers);
    std::normal_distribution<double> normal(0.0, 1.0);
    ZonalPolynomial p;
    p.q = q;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        p.centers.push_back(random_point(q, rng));
        std::vector<double> c(static_cast<std::size_t>(n) + 1);
        for (int l = 0; l <= n; ++l) {
            c[l] = normal(rng) / std::sqrt(to_double(dim_degree(l, q)));
        }
        p.components.emplace_back(q, std::move(c));
    }
    return p;
}

ZonalPolynomial random_harmonic(int q, int l, RandomStream& rng, int centers)
{
    require_sphere_q(q);
    if (l < 0 || centers < 1) {
        throw SphereDomainError("random_harmonic needs l >= 0 and at least one center");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    ZonalPolynomial p;
    p.q = q;
    for (int i = 0; i < centers; ++i) {
        p.centers.push_back(random_point(q, rng));
        std::vector<double> c(static_cast<std::size_t>(l) + 1, 0.0);
        c[l] = normal(rng);
        p.components.emplace_back(q, std::move(c));
    }
    return p;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body)
{
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace csphere
