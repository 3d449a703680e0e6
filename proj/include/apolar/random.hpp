#ifndef APOLAR_RANDOM_HPP
#define APOLAR_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <apolar/form.hpp>
#include <apolar/linalg.hpp>
#include <apolar/scalar.hpp>

namespace apolar
{

// Seeded source of small integers. The engine is fully specified by the standard and the
// range reduction is done here, so streams are identical on every platform.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    long long uniform(long long lo, long long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(m_engine() % span);
    }
    long long nonzero(long long lo, long long hi)
    {
        for (;;) {
            if (const auto v = uniform(lo, hi); v != 0) {
                return v;
            }
        }
    }
    Scalar nonzero_rational(long long max_num, long long max_den)
    {
        return make_scalar(Integer(static_cast<long>(nonzero(-max_num, max_num))),
                           Integer(static_cast<long>(uniform(1, max_den))));
    }

private:
    std::mt19937_64 m_engine;
};

// Nonzero vector of small integers.
inline std::vector<Scalar> random_vector(Rng &rng, std::size_t n, long long bound)
{
    for (;;) {
        std::vector<Scalar> v(n);
        bool nonzero = false;
        for (auto &x : v) {
            x = static_cast<long>(rng.uniform(-bound, bound));
            nonzero = nonzero || x != 0;
        }
        if (nonzero) {
            return v;
        }
    }
}

// Random invertible matrix with entries in [-bound, bound].
inline LinearChange random_linear_change(std::size_t nvars, std::uint64_t seed, long long bound = 3)
{
    Rng rng(seed);
    for (;;) {
        MatrixQ a(nvars, nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            for (std::size_t j = 0; j < nvars; ++j) {
                a(i, j) = static_cast<long>(rng.uniform(-bound, bound));
            }
        }
        if (determinant(a) != 0) {
            return LinearChange(std::move(a));
        }
    }
}

// Dense form with every coefficient drawn from [-bound, bound].
inline Form random_form(std::size_t nvars, unsigned d, std::uint64_t seed, long long bound = 9)
{
    Rng rng(seed);
    Form f(nvars, d);
    for (const auto &e : monomial_basis(nvars, d)) {
        f.add_term(e, Scalar(static_cast<long>(rng.uniform(-bound, bound))));
    }
    return f;
}

// sum_{i=1}^r lambda_i l_i^d with small-integer linear forms l_i (n+1 variables) and
// nonzero rational lambda_i. Border rank <= r by construction.
inline Form sample_rank_le(unsigned r, unsigned d, unsigned n, std::uint64_t seed)
{
    Rng rng(seed);
    Form f(n + 1, d);
    for (unsigned i = 0; i < r; ++i) {
        const Form l = Form::linear(random_vector(rng, n + 1, 3));
        const Scalar lambda = rng.nonzero_rational(5, 4);
        f += pow(l, d) * lambda;
    }
    return f;
}

} // namespace apolar

#endif
