#include "csphere/structure.hpp"

#include <algorithm>
#include <string>

namespace csphere {

void require_sphere_q(int q)
{
    if (q < 2) {
        throw SphereDomainError("sphere parameter q must be >= 2, got " + std::to_string(q));
    }
}

HarmIndex::HarmIndex(int m_, int n_, int q_) : m(m_), n(n_), q(q_)
{
    require_sphere_q(q);
    if (m < 0 || n < 0) {
        throw SphereDomainError("bidegree (m, n) must be nonnegative");
    }
}

BigInt binomial(int top, int k)
{
    if (k < 0 || top < 0 || k > top) {
        return 0;
    }
    k = std::min(k, top - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= top - k + i;
        r /= i;
    }
    return r;
}

BigInt dim_harm(const HarmIndex& idx)
{
    const int q = idx.q;
    // (m+q-2)!/(m!(q-2)!) * (n+q-2)!/(n!(q-2)!) * (m+n+q-1)/(q-1)
    BigInt num = binomial(idx.m + q - 2, idx.m) * binomial(idx.n + q - 2, idx.n)
                 * (idx.m + idx.n + q - 1);
    return num / (q - 1);
}

BigInt dim_degree(int l, int q)
{
    require_sphere_q(q);
    if (l < 0) {
        throw SphereDomainError("degree must be nonnegative");
    }
    return binomial(l + 2 * q - 1, l) - binomial(l + 2 * q - 3, l - 2);
}

BigInt dim_poly(int n, int q)
{
    require_sphere_q(q);
    if (n < 0) {
        throw SphereDomainError("degree must be nonnegative");
    }
    return binomial(n + 2 * q - 2, n) * (2 * n + 2 * q - 1) / (2 * q - 1);
}

double to_double(const BigInt& v)
{
    return v.convert_to<double>();
}

} // namespace csphere
