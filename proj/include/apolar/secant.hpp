#ifndef APOLAR_SECANT_HPP
#define APOLAR_SECANT_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <apolar/catalecticant.hpp>
#include <apolar/errors.hpp>
#include <apolar/form.hpp>
#include <apolar/scalar.hpp>

namespace apolar
{

inline constexpr const char *d3_caveat = "necessary conditions only for d=3";
inline constexpr const char *zero_form_note = "zero form: member of every secant variety by the cone convention";

struct MembershipVerdict {
    bool in_sigma1 = false;
    bool in_sigma2 = false;
    bool in_sigma3 = false;
    bool in_D = false;
    // k -> rank of the flattening phi_{d-k,k}(f), for the k that were consulted.
    std::map<unsigned, std::size_t> witness_ranks;
    std::optional<std::string> caveat;
};

namespace detail
{

inline void require_degree(const Form &f, unsigned min_d, const char *what)
{
    if (f.degree() < min_d) {
        throw PreconditionError(Precondition::unsupported_degree, std::string(what) + " requires d >= "
                                                                      + std::to_string(min_d) + " (got d="
                                                                      + std::to_string(f.degree()) + ")");
    }
}

// Rank cache for one form so verdicts consult each flattening once.
class RankCache
{
public:
    explicit RankCache(const Form &f) : m_f(f) {}

    std::size_t operator()(unsigned k)
    {
        auto it = m_ranks.find(k);
        if (it == m_ranks.end()) {
            it = m_ranks.emplace(k, flattening_rank(m_f, k)).first;
        }
        return it->second;
    }
    const std::map<unsigned, std::size_t> &ranks() const noexcept
    {
        return m_ranks;
    }

private:
    const Form &m_f;
    std::map<unsigned, std::size_t> m_ranks;
};

inline bool sigma1_from(RankCache &r, unsigned d)
{
    if (d < 2) {
        return true;
    }
    return r(1) <= 1 && r(d / 2) <= 1;
}

inline bool sigma2_from(RankCache &r, unsigned d)
{
    if (d < 2) {
        return true;
    }
    return r(1) <= 2 && (d < 3 || r(2) <= 2);
}

inline bool sigma3_from(RankCache &r, unsigned d)
{
    return r(1) <= 3 && r(d / 2) <= 3;
}

} // namespace detail

// Rank one: both the first and the middle catalecticant have rank <= 1.
inline bool in_sigma1(const Form &f)
{
    if (f.is_zero()) {
        return true;
    }
    detail::RankCache r(f);
    return detail::sigma1_from(r, f.degree());
}

// 3x3 minors of phi_{d-1,1} and phi_{d-2,2} (only phi_{1,1} when d = 2).
inline bool in_sigma2(const Form &f)
{
    detail::require_degree(f, 2, "sigma_2 membership");
    if (f.is_zero()) {
        return true;
    }
    detail::RankCache r(f);
    return detail::sigma2_from(r, f.degree());
}

// 4x4 minors of phi_{d-1,1} and the middle flattening. For d = 3 these are necessary
// conditions only; see membership() for the caveat.
inline bool in_sigma3(const Form &f)
{
    detail::require_degree(f, 3, "sigma_3 membership");
    if (f.is_zero()) {
        return true;
    }
    detail::RankCache r(f);
    return detail::sigma3_from(r, f.degree());
}

// Degenerate forms of sigma_3 \ sigma_2: rank phi_{d-1,1} <= 2 and middle rank <= 3.
inline bool in_degenerate_locus(const Form &f)
{
    detail::require_degree(f, 4, "the degenerate locus (empty for d <= 3)");
    if (f.is_zero()) {
        return false;
    }
    detail::RankCache r(f);
    const unsigned d = f.degree();
    return r(1) <= 2 && r(d / 2) <= 3 && !detail::sigma2_from(r, d);
}

inline MembershipVerdict membership(const Form &f)
{
    detail::require_degree(f, 3, "membership verdicts");
    MembershipVerdict v;
    if (f.is_zero()) {
        v.in_sigma1 = v.in_sigma2 = v.in_sigma3 = true;
        v.caveat = zero_form_note;
        return v;
    }
    const unsigned d = f.degree();
    detail::RankCache r(f);
    v.in_sigma1 = detail::sigma1_from(r, d);
    v.in_sigma2 = detail::sigma2_from(r, d);
    v.in_sigma3 = detail::sigma3_from(r, d);
    v.in_D = d >= 4 && v.in_sigma3 && !v.in_sigma2 && r(1) <= 2;
    v.witness_ranks = r.ranks();
    if (d == 3) {
        v.caveat = d3_caveat;
    }
    return v;
}

// max_k rank phi_{d-k,k}(f), a lower bound for the border rank.
inline std::size_t border_rank_lower_bound(const Form &f)
{
    if (f.is_zero()) {
        throw PreconditionError(Precondition::zero_form, "border rank bound of the zero form");
    }
    if (f.degree() < 2) {
        return 1;
    }
    std::size_t best = 0;
    for (unsigned k = 1; k + 1 <= f.degree(); ++k) {
        best = std::max(best, flattening_rank(f, k));
    }
    return best;
}

// C(d+n, n) - 3n - 3: codimension of a non-defective sigma_3(v_d(P^n)) in P(S^d).
inline long long expected_codim(unsigned d, unsigned n)
{
    if (d < 3 || n < 2) {
        throw PreconditionError(Precondition::out_of_range, "expected codimension needs d >= 3 and n >= 2");
    }
    return binom(static_cast<long long>(d + n), n) - 3LL * n - 3;
}

} // namespace apolar

#endif
