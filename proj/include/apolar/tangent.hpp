#ifndef APOLAR_TANGENT_HPP
#define APOLAR_TANGENT_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <apolar/catalecticant.hpp>
#include <apolar/errors.hpp>
#include <apolar/form.hpp>
#include <apolar/linalg.hpp>
#include <apolar/random.hpp>
#include <apolar/scalar.hpp>
#include <apolar/secant.hpp>

namespace apolar
{

// ----------------------------------------------------------------------------
// Conormal spaces

enum class ConormalFormula {
    // (f^perp)_1 (f^perp)_{d-1} + (f^perp)_s (f^perp)_{d-s}
    full,
    // (f^perp)_s (f^perp)_{d-s} alone; used when n = 2 or dim<f> = 2
    middle_only,
};

inline const char *to_string(ConormalFormula f) noexcept
{
    return f == ConormalFormula::full ? "full" : "middle-only";
}

namespace detail
{

inline void require_plane_or_more(const Form &f)
{
    if (f.nvars() < 3) {
        throw PreconditionError(Precondition::out_of_range,
                                "only n >= 2 (at least 3 variables) is in scope (got n="
                                    + std::to_string(static_cast<long long>(f.nvars()) - 1) + ")");
    }
}

// Checks f in sigma_3 \ sigma_2 with middle rank 3 and picks the conormal formula.
inline ConormalFormula conormal_dispatch(const Form &f, RankCache &ranks)
{
    require_degree(f, 4, "conormal computation");
    require_plane_or_more(f);
    if (f.is_zero()) {
        throw PreconditionError(Precondition::zero_form, "conormal space at the zero form");
    }
    const unsigned d = f.degree();
    if (!sigma3_from(ranks, d)) {
        throw PreconditionError(Precondition::not_in_sigma3, "form is not in sigma_3");
    }
    if (sigma2_from(ranks, d)) {
        throw PreconditionError(Precondition::in_sigma2, "form lies in sigma_2");
    }
    if (ranks(d / 2) != 3) {
        throw PreconditionError(Precondition::not_in_sigma3, "middle flattening does not have rank 3");
    }
    return (f.nvars() == 3 || ranks(1) == 2) ? ConormalFormula::middle_only : ConormalFormula::full;
}

inline Subspace conormal_with(const Form &f, ConormalFormula formula)
{
    const unsigned d = f.degree(), s = d / 2;
    const std::size_t nvars = f.nvars();
    RowSpaceBuilder builder(static_cast<std::size_t>(binom(d + nvars - 1, nvars - 1)));
    detail::accumulate_products(builder, apolar_piece(f, s), apolar_piece(f, d - s));
    if (formula == ConormalFormula::full) {
        detail::accumulate_products(builder, apolar_piece(f, 1), apolar_piece(f, d - 1));
    }
    return builder.build(Grading{d, nvars});
}

} // namespace detail

// Which conormal formula applies at f (decided from its flattening ranks).
inline ConormalFormula conormal_formula(const Form &f)
{
    detail::RankCache ranks(f);
    return detail::conormal_dispatch(f, ranks);
}

// Affine conormal space to sigma_3 at f, a subspace of T_d.
inline Subspace conormal_space(const Form &f)
{
    detail::RankCache ranks(f);
    return detail::conormal_with(f, detail::conormal_dispatch(f, ranks));
}

// ----------------------------------------------------------------------------
// Smoothness and the singular locus

enum class Smoothness { smooth, singular, in_sigma2, not_in_sigma3, d3_classified };

inline const char *to_string(Smoothness s) noexcept
{
    switch (s) {
        case Smoothness::smooth:
            return "smooth";
        case Smoothness::singular:
            return "singular";
        case Smoothness::in_sigma2:
            return "in-sigma2";
        case Smoothness::not_in_sigma3:
            return "not-in-sigma3";
        case Smoothness::d3_classified:
            return "d3-classified";
    }
    return "unknown";
}

struct SmoothnessReport {
    Form point;
    unsigned d = 0;
    unsigned n = 0;
    std::optional<std::size_t> conormal_dim;
    long long expected_codim = 0;
    std::optional<ConormalFormula> formula_used;
    Smoothness verdict = Smoothness::not_in_sigma3;
    std::optional<std::string> caveat;

    // Whether sigma_3 is smooth at the point (sigma_2 lies in the singular locus).
    bool is_smooth() const noexcept
    {
        return verdict == Smoothness::smooth || verdict == Smoothness::d3_classified;
    }
};

inline SmoothnessReport smoothness_at(const Form &f)
{
    detail::require_degree(f, 3, "smoothness");
    detail::require_plane_or_more(f);
    if (f.is_zero()) {
        throw PreconditionError(Precondition::zero_form, "smoothness at the zero form");
    }
    SmoothnessReport rep;
    rep.point = f;
    rep.d = f.degree();
    rep.n = static_cast<unsigned>(f.nvars() - 1);
    rep.expected_codim = expected_codim(rep.d, rep.n);

    detail::RankCache ranks(f);
    if (!detail::sigma3_from(ranks, rep.d)) {
        rep.verdict = Smoothness::not_in_sigma3;
        return rep;
    }
    if (detail::sigma2_from(ranks, rep.d)) {
        rep.verdict = Smoothness::in_sigma2;
        return rep;
    }
    if (rep.d == 3) {
        // sigma_3(v_3(P^n)) \ sigma_2 is smooth; no conormal formula is used here.
        rep.verdict = Smoothness::d3_classified;
        rep.caveat = d3_caveat;
        return rep;
    }
    const auto formula = detail::conormal_dispatch(f, ranks);
    const auto dim = detail::conormal_with(f, formula).dim();
    rep.formula_used = formula;
    rep.conormal_dim = dim;
    if (static_cast<long long>(dim) > rep.expected_codim) {
        throw Error("conormal dimension " + std::to_string(dim) + " exceeds the expected codimension "
                    + std::to_string(rep.expected_codim));
    }
    rep.verdict = static_cast<long long>(dim) == rep.expected_codim ? Smoothness::smooth : Smoothness::singular;
    return rep;
}

// Set-theoretic Sing(sigma_3): sigma_2, plus the degenerate locus when d = 4 and n >= 3.
inline bool in_singular_locus(const Form &f)
{
    detail::require_degree(f, 3, "singular locus membership");
    detail::require_plane_or_more(f);
    if (f.is_zero()) {
        return true;
    }
    detail::RankCache ranks(f);
    const unsigned d = f.degree();
    if (!detail::sigma3_from(ranks, d)) {
        throw PreconditionError(Precondition::not_in_sigma3, "form is not in sigma_3");
    }
    if (detail::sigma2_from(ranks, d)) {
        return true;
    }
    return d == 4 && f.nvars() >= 4 && ranks(1) <= 2;
}

// ----------------------------------------------------------------------------
// Hilbert function of an ideal given by generators

// dim of the degree-t piece of the ideal generated by `generators` (elements of T).
// Generators of degree above t contribute nothing.
inline std::size_t hilbert_function(const std::vector<Form> &generators, unsigned t)
{
    if (generators.empty()) {
        return 0;
    }
    const std::size_t nvars = generators.front().nvars();
    std::map<unsigned, std::vector<Form>> by_degree;
    for (const auto &g : generators) {
        if (g.nvars() != nvars) {
            throw PreconditionError(Precondition::dimension_mismatch, "generators in different rings");
        }
        if (g.degree() <= t) {
            by_degree[g.degree()].push_back(g);
        }
    }
    RowSpaceBuilder builder(static_cast<std::size_t>(binom(t + nvars - 1, nvars - 1)));
    for (const auto &[e, gens] : by_degree) {
        detail::accumulate_products(builder, Subspace::full(static_cast<std::size_t>(binom(t - e + nvars - 1, nvars - 1)),
                                                            Grading{t - e, nvars}),
                                    span_of_forms(gens, nvars, e));
    }
    return builder.rank();
}

enum class NetKind { unmixed, mixed };

// The three apolar quadrics of the unmixed (x0^{d-1}x1 + x2^d) or mixed
// (x0^{d-2}x1^2 + x0^{d-1}x2) normal form, in T = Q[y0, y1, y2].
inline std::vector<Form> apolar_net(NetKind kind, unsigned d)
{
    auto q = [](std::initializer_list<unsigned> e) { return Form::monomial(Exponent(e)); };
    if (kind == NetKind::unmixed) {
        return {q({1, 0, 1}), q({0, 2, 0}), q({0, 1, 1})};
    }
    const Scalar half_dm1 = make_scalar(Integer(static_cast<long>(d) - 1), Integer(2));
    return {q({1, 0, 1}) - q({0, 2, 0}) * half_dm1, q({0, 1, 1}), q({0, 0, 2})};
}

// Generators Q_i Q_j (i <= j) of I^2 for the net I.
inline std::vector<Form> squared_generators(const std::vector<Form> &net)
{
    std::vector<Form> out;
    for (std::size_t i = 0; i < net.size(); ++i) {
        for (std::size_t j = i; j < net.size(); ++j) {
            out.push_back(net[i] * net[j]);
        }
    }
    return out;
}

// H(I^2, d) from the resolution 0 -> T(-6) -> T(-5)^6 -> T(-4)^6 -> I^2 -> 0 (three variables).
inline long long squared_net_hilbert_closed_form(unsigned d)
{
    const long long m = d;
    return 6 * binom(m - 2, 2) - 6 * binom(m - 3, 2) + binom(m - 4, 2);
}

// ----------------------------------------------------------------------------
// Orbit classification

enum class OrbitClass { Fermat, Unmixed, Mixed, DegenerateBinary, InSigma2, NotInSigma3 };

inline const char *to_string(OrbitClass c) noexcept
{
    switch (c) {
        case OrbitClass::Fermat:
            return "Fermat";
        case OrbitClass::Unmixed:
            return "Unmixed";
        case OrbitClass::Mixed:
            return "Mixed";
        case OrbitClass::DegenerateBinary:
            return "DegenerateBinary";
        case OrbitClass::InSigma2:
            return "InSigma2";
        case OrbitClass::NotInSigma3:
            return "NotInSigma3";
    }
    return "unknown";
}

inline std::optional<OrbitClass> parse_orbit_class(std::string_view s)
{
    std::string low;
    for (char c : s) {
        if (c != '-' && c != '_') {
            low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (low == "fermat") {
        return OrbitClass::Fermat;
    }
    if (low == "unmixed") {
        return OrbitClass::Unmixed;
    }
    if (low == "mixed") {
        return OrbitClass::Mixed;
    }
    if (low == "degeneratebinary" || low == "degenerate" || low == "binary") {
        return OrbitClass::DegenerateBinary;
    }
    return std::nullopt;
}

namespace detail
{

using UPoly = std::vector<Scalar>; // coefficients, lowest degree first

inline void trim(UPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline UPoly derivative(const UPoly &p)
{
    UPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) {
        r.push_back(p[i] * Scalar(static_cast<long>(i)));
    }
    trim(r);
    return r;
}

inline UPoly poly_mod(UPoly a, const UPoly &b)
{
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Scalar c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= c * b[i];
        }
        trim(a);
    }
    return a;
}

inline UPoly poly_gcd(UPoly a, UPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Symmetric matrix of a quadric in three variables over monomial_basis(3, 2).
inline MatrixQ quadric_matrix(const std::vector<Scalar> &c)
{
    // basis order: y0^2, y0y1, y0y2, y1^2, y1y2, y2^2
    const Scalar h(1, 2);
    return MatrixQ{{c[0], c[1] * h, c[2] * h}, {c[1] * h, c[3], c[4] * h}, {c[2] * h, c[4] * h, c[5]}};
}

// Number of distinct roots of the discriminant cubic det(sum_i (p_i + t q_i) M_i)
// along one line, or nullopt when the restriction drops degree.
inline std::optional<std::size_t> distinct_roots_on_line(const std::vector<MatrixQ> &mats,
                                                          const std::vector<Scalar> &p, const std::vector<Scalar> &q)
{
    // Sample at t = 0..3 and interpolate the cubic exactly.
    std::vector<Scalar> values;
    for (long t = 0; t < 4; ++t) {
        MatrixQ m(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            const Scalar w = p[i] + q[i] * Scalar(t);
            for (std::size_t r = 0; r < 3; ++r) {
                for (std::size_t c = 0; c < 3; ++c) {
                    m(r, c) += w * mats[i](r, c);
                }
            }
        }
        values.push_back(determinant(m));
    }
    // Newton divided differences on nodes 0, 1, 2, 3, then expand to monomial form.
    std::vector<Scalar> dd = values;
    for (std::size_t level = 1; level < 4; ++level) {
        for (std::size_t i = 3; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Scalar(static_cast<long>(level));
        }
    }
    UPoly poly{dd[3]};
    for (std::size_t k = 3; k-- > 0;) {
        // poly = poly * (t - k) + dd[k]
        UPoly next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * Scalar(static_cast<long>(k));
        }
        next[0] += dd[k];
        poly = std::move(next);
    }
    trim(poly);
    if (poly.size() != 4) {
        return std::nullopt;
    }
    const auto g = poly_gcd(poly, derivative(poly));
    return 3 - (g.size() - 1);
}

inline constexpr std::uint64_t classify_default_seed = 0x5eed0fc1a55ULL;

// Multiplicity pattern of the discriminant cubic of the net of apolar conics of a ternary
// form g: returns the number of distinct linear factors.
inline std::size_t discriminant_pattern(const Form &g, std::uint64_t seed)
{
    const auto net = apolar_piece(g, 2);
    if (net.dim() != 3) {
        throw PreconditionError(Precondition::classification_failed,
                                "apolar conics form a space of dimension " + std::to_string(net.dim())
                                    + ", expected a net (3)");
    }
    // A length-3 base scheme off a line leaves exactly 7 cubics in the ideal of the net.
    if (hilbert_function(subspace_forms(net), 3) != 7) {
        throw PreconditionError(Precondition::classification_failed,
                                "net of apolar conics has no length-3 base scheme off a line");
    }
    std::vector<MatrixQ> mats;
    for (const auto &v : net.basis_vectors()) {
        mats.push_back(quadric_matrix(v));
    }
    Rng rng(seed);
    constexpr int max_retries = 8;
    constexpr std::size_t wanted_lines = 3;
    std::size_t best = 0, good = 0;
    for (int attempt = 0; attempt <= max_retries && good < wanted_lines; ++attempt) {
        const auto p = random_vector(rng, 3, 50);
        const auto q = random_vector(rng, 3, 50);
        if (const auto roots = distinct_roots_on_line(mats, p, q)) {
            best = std::max(best, *roots);
            ++good;
        }
    }
    if (good == 0) {
        throw PreconditionError(Precondition::classification_failed,
                                "discriminant cubic degenerates on every sampled line");
    }
    return best;
}

} // namespace detail

inline OrbitClass classify_orbit(const Form &f, std::uint64_t seed = detail::classify_default_seed)
{
    detail::require_degree(f, 3, "orbit classification");
    detail::require_plane_or_more(f);
    if (f.is_zero()) {
        return OrbitClass::InSigma2;
    }
    detail::RankCache ranks(f);
    const unsigned d = f.degree();
    if (!detail::sigma3_from(ranks, d)) {
        return OrbitClass::NotInSigma3;
    }
    if (detail::sigma2_from(ranks, d)) {
        return OrbitClass::InSigma2;
    }
    const auto span_dim = ranks(1);
    if (span_dim == 2) {
        return OrbitClass::DegenerateBinary;
    }
    if (span_dim != 3) {
        throw PreconditionError(Precondition::classification_failed,
                                "span of dimension " + std::to_string(span_dim) + " outside sigma_3 \\ sigma_2");
    }
    const auto restricted = restrict_to_span(f);
    switch (detail::discriminant_pattern(restricted.essential, seed)) {
        case 3:
            return OrbitClass::Fermat;
        case 2:
            return OrbitClass::Unmixed;
        default:
            return OrbitClass::Mixed;
    }
}

// ----------------------------------------------------------------------------
// Normal forms

// Representative of an orbit in sigma_3 \ sigma_2, in n+1 variables:
//   Fermat            x0^d + x1^d + x2^d
//   Unmixed           x0^{d-1} x1 + x2^d
//   Mixed             x0^{d-2} x1^2 + x0^{d-1} x2
//   DegenerateBinary  x0^d + alpha x1^d + beta (x0 + x1)^d   (d >= 4)
inline Form canonical_form(OrbitClass kind, unsigned d, unsigned n, const Scalar &alpha = 1, const Scalar &beta = 1)
{
    const std::size_t nv = n + 1;
    auto mono = [nv](std::initializer_list<std::pair<std::size_t, unsigned>> powers) {
        Exponent e(nv);
        for (auto [i, p] : powers) {
            e[i] += p;
        }
        return Form::monomial(e);
    };
    switch (kind) {
        case OrbitClass::Fermat:
        case OrbitClass::Unmixed:
        case OrbitClass::Mixed:
            if (d < 3 || n < 2) {
                throw PreconditionError(Precondition::out_of_range,
                                        "non-degenerate normal forms need d >= 3 and n >= 2");
            }
            if (kind == OrbitClass::Fermat) {
                return mono({{0, d}}) + mono({{1, d}}) + mono({{2, d}});
            }
            if (kind == OrbitClass::Unmixed) {
                return mono({{0, d - 1}, {1, 1}}) + mono({{2, d}});
            }
            return mono({{0, d - 2}, {1, 2}}) + mono({{0, d - 1}, {2, 1}});
        case OrbitClass::DegenerateBinary: {
            if (d < 4) {
                throw PreconditionError(Precondition::unsupported_degree,
                                        "no degenerate orbit exists in sigma_3 \\ sigma_2 for d <= 3");
            }
            if (n < 1) {
                throw PreconditionError(Precondition::out_of_range, "binary forms need n >= 1");
            }
            if (alpha == 0 || beta == 0) {
                throw PreconditionError(Precondition::out_of_range, "alpha and beta must be nonzero");
            }
            std::vector<Scalar> sum(nv);
            sum[0] = sum[1] = 1;
            return mono({{0, d}}) + mono({{1, d}}) * alpha + pow(Form::linear(sum), d) * beta;
        }
        case OrbitClass::InSigma2:
        case OrbitClass::NotInSigma3:
            break;
    }
    throw PreconditionError(Precondition::out_of_range, std::string("no normal form for class ") + to_string(kind));
}

} // namespace apolar

#endif
