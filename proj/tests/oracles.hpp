#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: explicit finite sums in 50-digit arithmetic.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real gamma_ratio_binom(Real top, int k)
{
    // binom(top, k) for real top and integer k >= 0
    Real r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (top - k + i) / i;
    }
    return r;
}

/// Explicit sum: sum_s binom(n+a, n-s) binom(n+b, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
inline double jacobi(int n, double a, double b, double x)
{
    const Real xm = (Real(x) - 1) / 2;
    const Real xp = (Real(x) + 1) / 2;
    Real sum = 0;
    for (int s = 0; s <= n; ++s) {
        sum += gamma_ratio_binom(Real(n) + a, n - s) * gamma_ratio_binom(Real(n) + b, s)
               * pow(xm, s) * pow(xp, n - s);
    }
    return static_cast<double>(sum);
}

/// C_n^lambda(x) = sum_k (-1)^k (lambda)_{n-k} / (k! (n-2k)!) (2x)^{n-2k}.
inline double gegenbauer(int n, double lambda, double x)
{
    Real sum = 0;
    for (int k = 0; 2 * k <= n; ++k) {
        Real poch = 1; // (lambda)_{n-k}
        for (int i = 0; i < n - k; ++i) {
            poch *= Real(lambda) + i;
        }
        Real fact = 1;
        for (int i = 2; i <= k; ++i) {
            fact *= i;
        }
        for (int i = 2; i <= n - 2 * k; ++i) {
            fact *= i;
        }
        const Real term = poch / fact * pow(Real(2) * x, n - 2 * k);
        sum += k % 2 == 0 ? term : -term;
    }
    return static_cast<double>(sum);
}

inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace oracle
