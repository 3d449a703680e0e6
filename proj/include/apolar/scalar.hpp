#ifndef APOLAR_SCALAR_HPP
#define APOLAR_SCALAR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace apolar
{

// Exact rational, always canonical (lowest terms, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(const Integer &num, const Integer &den)
{
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Scalar &q)
{
    return q.get_str();
}

inline std::string to_string(const Integer &z)
{
    return z.get_str();
}

inline Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// C(n, k) as a signed machine integer, zero when k < 0 or k > n.
inline long long binom(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Clears denominators of a rational vector and divides out the content, giving the
// primitive integer vector spanning the same line. The zero vector maps to zeros.
inline std::vector<Integer> primitive_integer_vector(const std::vector<Scalar> &v)
{
    Integer den = 1;
    for (const auto &x : v) {
        if (x != 0) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        }
    }
    std::vector<Integer> out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            out[i] = v[i].get_num() * (den / v[i].get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
        }
    }
    if (g > 1) {
        for (auto &x : out) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
    }
    return out;
}

} // namespace apolar

#endif
