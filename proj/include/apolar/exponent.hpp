#ifndef APOLAR_EXPONENT_HPP
#define APOLAR_EXPONENT_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <vector>

#include <apolar/errors.hpp>

namespace apolar
{

// Exponent vector (i_0, ..., i_n) of a monomial in n+1 variables.
class Exponent
{
public:
    Exponent() = default;
    explicit Exponent(std::size_t nvars) : m_e(nvars, 0u) {}
    Exponent(std::initializer_list<unsigned> il) : m_e(il) {}
    explicit Exponent(std::vector<unsigned> e) : m_e(std::move(e)) {}

    static Exponent unit(std::size_t nvars, std::size_t i, unsigned power = 1)
    {
        Exponent e(nvars);
        e.m_e[i] = power;
        return e;
    }

    std::size_t nvars() const noexcept
    {
        return m_e.size();
    }
    unsigned degree() const noexcept
    {
        return std::accumulate(m_e.begin(), m_e.end(), 0u);
    }
    unsigned operator[](std::size_t i) const
    {
        return m_e[i];
    }
    unsigned &operator[](std::size_t i)
    {
        return m_e[i];
    }
    const std::vector<unsigned> &entries() const noexcept
    {
        return m_e;
    }

    // Componentwise J <= I.
    bool divides(const Exponent &other) const
    {
        for (std::size_t i = 0; i < m_e.size(); ++i) {
            if (m_e[i] > other.m_e[i]) {
                return false;
            }
        }
        return true;
    }

    friend Exponent operator+(const Exponent &a, const Exponent &b)
    {
        Exponent r(a);
        for (std::size_t i = 0; i < r.m_e.size(); ++i) {
            r.m_e[i] += b.m_e[i];
        }
        return r;
    }
    // Requires b.divides(a).
    friend Exponent operator-(const Exponent &a, const Exponent &b)
    {
        Exponent r(a);
        for (std::size_t i = 0; i < r.m_e.size(); ++i) {
            r.m_e[i] -= b.m_e[i];
        }
        return r;
    }

    friend bool operator==(const Exponent &, const Exponent &) = default;

private:
    std::vector<unsigned> m_e;
};

// Graded lexicographic order, largest first: higher degree first, then larger leading
// exponent first. Used as the basis ordering everywhere.
struct GrlexGreater {
    bool operator()(const Exponent &a, const Exponent &b) const
    {
        const auto da = a.degree(), db = b.degree();
        if (da != db) {
            return da > db;
        }
        return std::lexicographical_compare(b.entries().begin(), b.entries().end(), a.entries().begin(),
                                            a.entries().end());
    }
};

// All exponents of degree t in nvars variables, in descending graded-lex order.
inline std::vector<Exponent> monomial_basis(std::size_t nvars, unsigned t)
{
    std::vector<Exponent> out;
    if (nvars == 0) {
        if (t == 0) {
            out.emplace_back();
        }
        return out;
    }
    Exponent cur(nvars);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == nvars) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned v = left + 1; v-- > 0;) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, t);
    return out;
}

// Ordered monomial basis of a graded piece with reverse lookup.
class MonomialIndex
{
public:
    MonomialIndex() = default;
    MonomialIndex(std::size_t nvars, unsigned degree)
        : m_nvars(nvars), m_degree(degree), m_basis(monomial_basis(nvars, degree))
    {
        for (std::size_t i = 0; i < m_basis.size(); ++i) {
            m_lookup.emplace(m_basis[i], i);
        }
    }

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    unsigned degree() const noexcept
    {
        return m_degree;
    }
    std::size_t size() const noexcept
    {
        return m_basis.size();
    }
    const Exponent &operator[](std::size_t i) const
    {
        return m_basis[i];
    }
    const std::vector<Exponent> &basis() const noexcept
    {
        return m_basis;
    }
    std::size_t index_of(const Exponent &e) const
    {
        const auto it = m_lookup.find(e);
        if (it == m_lookup.end()) {
            throw PreconditionError(Precondition::dimension_mismatch, "exponent not in this graded piece");
        }
        return it->second;
    }

private:
    std::size_t m_nvars = 0;
    unsigned m_degree = 0;
    std::vector<Exponent> m_basis;
    std::map<Exponent, std::size_t, GrlexGreater> m_lookup;
};

} // namespace apolar

#endif
