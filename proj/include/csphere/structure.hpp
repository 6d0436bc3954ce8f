#pragma once

// Dimensions of harm(m,n), of the degree-l harmonic space H_l and of the
// polynomial space P_n on the complex sphere in C^q. All counts are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace csphere {

using BigInt = boost::multiprecision::cpp_int;

class SphereDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Throws SphereDomainError unless q >= 2.
void require_sphere_q(int q);

struct HarmIndex {
    int m;
    int n;
    int q;

    HarmIndex(int m_, int n_, int q_);
};

BigInt binomial(int top, int k);

/// d_{m,n} = (m+n+q-1) (m+q-2)! (n+q-2)! / (m! n! (q-1)! (q-2)!)
BigInt dim_harm(const HarmIndex& idx);

/// d_l = dim H_l, the dimension of degree-l spherical harmonics on R^{2q}.
BigInt dim_degree(int l, int q);

/// t_n = dim P_n = (2n+2q-1) (n+2q-2)! / ((2q-1)! n!)
BigInt dim_poly(int n, int q);

double to_double(const BigInt& v);

} // namespace csphere
