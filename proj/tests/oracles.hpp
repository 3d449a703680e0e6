#ifndef APOLAR_TESTS_ORACLES_HPP
#define APOLAR_TESTS_ORACLES_HPP

// Reference computations that share no code path with the library. Ranks come from
// textbook elimination and catalecticant entries from literal differentiation.

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include <gmpxx.h>

#include <apolar/form.hpp>

namespace oracle
{

using Q = mpq_class;
using Mono = std::vector<unsigned>;
using Poly = std::map<Mono, Q>;

inline long long binom(long long n, long long k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

inline long long choose2(long long m)
{
    return m < 2 ? 0 : m * (m - 1) / 2;
}

// Row-by-row Gaussian elimination over Q.
inline std::size_t rank(std::vector<std::vector<Q>> m)
{
    if (m.empty()) {
        return 0;
    }
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) {
                continue;
            }
            const Q factor = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) {
                m[i][j] -= factor * m[r][j];
            }
        }
        ++r;
    }
    return r;
}

inline Q det3(const std::array<std::array<Q, 3>, 3> &a)
{
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// Quadric in three variables given by coefficients of
// y0^2, y0y1, y0y2, y1^2, y1y2, y2^2; returns its symmetric Gram matrix.
inline std::array<std::array<Q, 3>, 3> gram(const std::array<Q, 6> &c)
{
    const Q h(1, 2);
    return {{{c[0], c[1] * h, c[2] * h}, {c[1] * h, c[3], c[4] * h}, {c[2] * h, c[4] * h, c[5]}}};
}

// det(a Q1 + b Q2 + c Q3).
inline Q discriminant(const std::array<std::array<Q, 6>, 3> &net, const Q &a, const Q &b, const Q &c)
{
    std::array<Q, 6> comb;
    for (std::size_t i = 0; i < 6; ++i) {
        comb[i] = a * net[0][i] + b * net[1][i] + c * net[2][i];
    }
    return det3(gram(comb));
}

// All exponent vectors of total degree t in nvars variables (lexicographic recursion).
inline std::vector<Mono> monomials(std::size_t nvars, unsigned t)
{
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    auto rec = [&](auto &self, std::size_t pos, unsigned left) -> void {
        if (pos + 1 == nvars) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, t);
    return out;
}

inline Poly to_poly(const apolar::Form &f)
{
    Poly p;
    for (const auto &[e, c] : f.terms()) {
        p[e.entries()] = c;
    }
    return p;
}

inline Poly partial(const Poly &p, std::size_t var)
{
    Poly r;
    for (const auto &[e, c] : p) {
        if (e[var] == 0) {
            continue;
        }
        Mono m = e;
        m[var] -= 1;
        r[m] += c * static_cast<long>(e[var]);
    }
    for (auto it = r.begin(); it != r.end();) {
        it = it->second == 0 ? r.erase(it) : std::next(it);
    }
    return r;
}

inline Q factorial(unsigned n)
{
    Q r = 1;
    for (unsigned i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

// Coefficient of the divided power x^I / I! in d^J f, by differentiating J times.
inline Q contraction_entry(const apolar::Form &f, const Mono &row, const Mono &col)
{
    Poly p = to_poly(f);
    for (std::size_t v = 0; v < col.size(); ++v) {
        for (unsigned m = 0; m < col[v]; ++m) {
            p = partial(p, v);
        }
    }
    const auto it = p.find(row);
    if (it == p.end()) {
        return 0;
    }
    Q c = it->second;
    for (auto i : row) {
        c *= factorial(i);
    }
    return c;
}

// Rank of f's catalecticant S_k x T_{d-k}, built entry by entry from derivatives.
inline std::size_t flattening_rank(const apolar::Form &f, unsigned k)
{
    const auto rows = monomials(f.nvars(), k);
    const auto cols = monomials(f.nvars(), f.degree() - k);
    std::vector<std::vector<Q>> m(rows.size(), std::vector<Q>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            m[i][j] = contraction_entry(f, rows[i], cols[j]);
        }
    }
    return rank(std::move(m));
}

// Closed-form dimension counts.

inline long long expected_codim(long long d, long long n)
{
    return binom(d + n, n) - 3 * n - 3;
}

inline long long plane_conormal_dim(long long d)
{
    return binom(d + 2, 2) - 9;
}

inline long long degenerate_conormal_dim(long long d, long long n)
{
    if (d == 4) {
        return binom(4 + n, 4) - 5 - 4 * (n - 1);
    }
    if (d == 5) {
        return binom(5 + n, 5) - 6 - 3 * (n - 1);
    }
    return binom(d + n, n) - 3 * (n - 1) - 6;
}

inline long long squared_net_hilbert(long long d)
{
    return 6 * choose2(d - 2) - 6 * choose2(d - 3) + choose2(d - 4);
}

} // namespace oracle

#endif
