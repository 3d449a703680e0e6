#ifndef APOLAR_CATALECTICANT_HPP
#define APOLAR_CATALECTICANT_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <apolar/errors.hpp>
#include <apolar/exponent.hpp>
#include <apolar/form.hpp>
#include <apolar/linalg.hpp>

namespace apolar
{

// Matrix of the catalecticant T_{d-k} -> S_k, g -> g.f, in the divided-power basis X^I of
// S_k (rows) and the monomial basis Y^J of T_{d-k} (columns). Entry (I, J) is a_{I+J}.
struct FlatteningMatrix {
    unsigned d = 0;
    unsigned k = 0;
    std::size_t nvars = 0;
    std::vector<Exponent> row_index;
    std::vector<Exponent> col_index;
    MatrixQ matrix;
};

namespace detail
{

// Same as build_flattening but accepts the boundary cases k = 0 and k = d.
inline FlatteningMatrix flattening_any(const Form &f, unsigned k)
{
    const unsigned d = f.degree();
    if (k > d) {
        throw PreconditionError(Precondition::out_of_range, "flattening index exceeds the degree");
    }
    FlatteningMatrix fm;
    fm.d = d;
    fm.k = k;
    fm.nvars = f.nvars();
    fm.row_index = monomial_basis(f.nvars(), k);
    const MonomialIndex cols(f.nvars(), d - k);
    fm.col_index = cols.basis();
    fm.matrix = MatrixQ(fm.row_index.size(), fm.col_index.size());
    for (const auto &[e, c] : f.terms()) {
        (void)c;
        const Scalar a = scaled_coefficient(f, e);
        // Every split e = I + J with |I| = k contributes one entry.
        for (std::size_t i = 0; i < fm.row_index.size(); ++i) {
            const Exponent &row = fm.row_index[i];
            if (!row.divides(e)) {
                continue;
            }
            fm.matrix(i, cols.index_of(e - row)) = a;
        }
    }
    return fm;
}

} // namespace detail

inline FlatteningMatrix build_flattening(const Form &f, unsigned k)
{
    if (k < 1 || k + 1 > f.degree()) {
        throw PreconditionError(Precondition::out_of_range,
                                "flattening index k must satisfy 1 <= k <= d-1 (k=" + std::to_string(k)
                                    + ", d=" + std::to_string(f.degree()) + ")");
    }
    return detail::flattening_any(f, k);
}

inline std::size_t flattening_rank(const Form &f, unsigned k)
{
    return rank(build_flattening(f, k).matrix);
}

// Ranks of every flattening 1 <= k <= d-1, indexed by k (entry 0 unused).
inline std::vector<std::size_t> flattening_ranks(const Form &f)
{
    std::vector<std::size_t> r(f.degree() > 0 ? f.degree() : 1, 0);
    for (unsigned k = 1; k + 1 <= f.degree(); ++k) {
        r[k] = flattening_rank(f, k);
    }
    return r;
}

// (f^perp)_t: operators of degree t annihilating f. For 1 <= t <= d-1 this is the kernel
// of the flattening T_t -> S_{d-t}; t = 0 and t = d use the boundary contractions.
inline Subspace apolar_piece(const Form &f, unsigned t)
{
    if (t > f.degree()) {
        throw PreconditionError(Precondition::out_of_range, "apolar degree exceeds the form degree");
    }
    return kernel_basis(detail::flattening_any(f, f.degree() - t).matrix, Grading{t, f.nvars()});
}

// Elements of a graded subspace as forms in the dual variables.
inline std::vector<Form> subspace_forms(const Subspace &s)
{
    if (!s.grading()) {
        throw PreconditionError(Precondition::dimension_mismatch, "subspace carries no grading");
    }
    std::vector<Form> out;
    out.reserve(s.dim());
    for (const auto &v : s.basis_vectors()) {
        out.push_back(Form::from_coefficients(s.grading()->nvars, s.grading()->degree, v));
    }
    return out;
}

// Span of graded forms of a common degree as a canonical subspace.
inline Subspace span_of_forms(const std::vector<Form> &forms, std::size_t nvars, unsigned degree)
{
    const MonomialIndex idx(nvars, degree);
    RowSpaceBuilder b(idx.size());
    for (const auto &g : forms) {
        if (g.nvars() != nvars || g.degree() != degree) {
            throw PreconditionError(Precondition::dimension_mismatch, "form outside the requested graded piece");
        }
        if (b.is_full()) {
            break;
        }
        b.add(g.coefficient_vector(idx));
    }
    return b.build(Grading{degree, nvars});
}

struct SpanInfo {
    std::size_t dim = 0;
    // Linear forms spanning <f>, as coefficient vectors over x_0..x_n.
    std::vector<std::vector<Scalar>> basis;
};

// <f>: the image of the first flattening T_{d-1} -> S_1.
inline SpanInfo span_of(const Form &f)
{
    if (f.is_zero()) {
        throw PreconditionError(Precondition::zero_form, "the span of the zero form is undefined");
    }
    SpanInfo out;
    if (f.degree() == 0) {
        return out;
    }
    const auto fm = detail::flattening_any(f, 1);
    const auto cols = rref(fm.matrix);
    out.dim = cols.rank;
    for (auto p : cols.pivots) {
        std::vector<Scalar> v(fm.nvars);
        for (std::size_t i = 0; i < fm.nvars; ++i) {
            v[i] = fm.matrix(i, p);
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

struct Restriction {
    // f written in its r essential variables.
    Form essential;
    // A with substitute_linear(extend_variables(essential, n+1), A) == f.
    LinearChange change;
};

// Writes f in dim<f> variables. The first r rows of the coordinate change are the pivot
// columns of the first flattening, made primitive; the remaining rows are unit vectors
// chosen first-fit.
inline Restriction restrict_to_span(const Form &f)
{
    const auto span = span_of(f);
    const std::size_t n = f.nvars();
    RowSpaceBuilder independent(n);
    std::vector<std::vector<Scalar>> rows;
    for (const auto &v : span.basis) {
        // Primitive integer rows keep the essential form free of spurious scalars.
        std::vector<Scalar> row;
        for (const auto &z : primitive_integer_vector(v)) {
            row.emplace_back(z);
        }
        independent.add(row);
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < n && rows.size() < n; ++i) {
        std::vector<Scalar> e(n);
        e[i] = 1;
        if (independent.add(e)) {
            rows.push_back(std::move(e));
        }
    }
    LinearChange change(MatrixQ::from_rows(rows, n));
    const Form g = substitute_linear(f, change.inverse());
    return Restriction{truncate_variables(g, span.dim), std::move(change)};
}

namespace detail
{

// Adds every product u*w (u, w running over the canonical bases) to `builder`, whose
// ambient space must be T_{a+b}.
inline void accumulate_products(RowSpaceBuilder &builder, const Subspace &u, const Subspace &w)
{
    if (!u.grading() || !w.grading() || u.grading()->nvars != w.grading()->nvars) {
        throw PreconditionError(Precondition::dimension_mismatch, "graded pieces of different rings");
    }
    const std::size_t nvars = u.grading()->nvars;
    const unsigned a = u.grading()->degree, b = w.grading()->degree;
    const MonomialIndex ia(nvars, a), ib(nvars, b), iab(nvars, a + b);
    if (builder.ambient_dim() != iab.size()) {
        throw PreconditionError(Precondition::dimension_mismatch, "product lands outside the builder's space");
    }
    // product_index[i][j] = position of (monomial i) * (monomial j) in T_{a+b}
    std::vector<std::vector<std::size_t>> product_index(ia.size(), std::vector<std::size_t>(ib.size()));
    for (std::size_t i = 0; i < ia.size(); ++i) {
        for (std::size_t j = 0; j < ib.size(); ++j) {
            product_index[i][j] = iab.index_of(ia[i] + ib[j]);
        }
    }
    struct Sparse {
        std::vector<std::size_t> idx;
        std::vector<Scalar> val;
    };
    auto sparse_rows = [](const Subspace &s) {
        std::vector<Sparse> out(s.dim());
        for (std::size_t r = 0; r < s.dim(); ++r) {
            for (std::size_t c = 0; c < s.ambient_dim(); ++c) {
                if (s.basis()(r, c) != 0) {
                    out[r].idx.push_back(c);
                    out[r].val.push_back(s.basis()(r, c));
                }
            }
        }
        return out;
    };
    const auto su = sparse_rows(u), sw = sparse_rows(w);
    for (const auto &x : su) {
        for (const auto &y : sw) {
            if (builder.is_full()) {
                return;
            }
            std::vector<Scalar> prod(iab.size());
            for (std::size_t p = 0; p < x.idx.size(); ++p) {
                for (std::size_t q = 0; q < y.idx.size(); ++q) {
                    prod[product_index[x.idx[p]][y.idx[q]]] += x.val[p] * y.val[q];
                }
            }
            builder.add(std::move(prod));
        }
    }
}

} // namespace detail

// Span of all products u*w, u in U (degree a), w in W (degree b), inside T_{a+b}.
inline Subspace graded_product(const Subspace &u, const Subspace &w)
{
    if (!u.grading() || !w.grading() || u.grading()->nvars != w.grading()->nvars) {
        throw PreconditionError(Precondition::dimension_mismatch, "graded pieces of different rings");
    }
    const Grading g{u.grading()->degree + w.grading()->degree, u.grading()->nvars};
    RowSpaceBuilder builder(static_cast<std::size_t>(binom(static_cast<long long>(g.degree + g.nvars - 1),
                                                           static_cast<long long>(g.nvars - 1))));
    detail::accumulate_products(builder, u, w);
    return builder.build(g);
}

} // namespace apolar

#endif
