#ifndef APOLAR_LINALG_HPP
#define APOLAR_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <apolar/errors.hpp>
#include <apolar/scalar.hpp>

namespace apolar
{

// Dense exact rational matrix, row-major.
class MatrixQ
{
public:
    MatrixQ() = default;
    MatrixQ(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}
    MatrixQ(std::initializer_list<std::initializer_list<Scalar>> init)
    {
        m_rows = init.size();
        m_cols = m_rows ? init.begin()->size() : 0;
        m_data.reserve(m_rows * m_cols);
        for (const auto &row : init) {
            if (row.size() != m_cols) {
                throw PreconditionError(Precondition::dimension_mismatch, "ragged matrix literal");
            }
            m_data.insert(m_data.end(), row.begin(), row.end());
        }
    }

    static MatrixQ identity(std::size_t n)
    {
        MatrixQ m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    static MatrixQ from_rows(const std::vector<std::vector<Scalar>> &rows, std::size_t cols)
    {
        MatrixQ m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw PreconditionError(Precondition::dimension_mismatch, "row length mismatch");
            }
            std::copy(rows[i].begin(), rows[i].end(), m.m_data.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return m;
    }

    std::size_t rows() const noexcept
    {
        return m_rows;
    }
    std::size_t cols() const noexcept
    {
        return m_cols;
    }

    Scalar &operator()(std::size_t i, std::size_t j)
    {
        return m_data[i * m_cols + j];
    }
    const Scalar &operator()(std::size_t i, std::size_t j) const
    {
        return m_data[i * m_cols + j];
    }

    std::vector<Scalar> row(std::size_t i) const
    {
        const auto first = m_data.begin() + static_cast<std::ptrdiff_t>(i * m_cols);
        return {first, first + static_cast<std::ptrdiff_t>(m_cols)};
    }

    MatrixQ transpose() const
    {
        MatrixQ t(m_cols, m_rows);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    bool is_zero() const
    {
        return std::all_of(m_data.begin(), m_data.end(), [](const Scalar &x) { return x == 0; });
    }

    friend MatrixQ operator*(const MatrixQ &a, const MatrixQ &b)
    {
        if (a.m_cols != b.m_rows) {
            throw PreconditionError(Precondition::dimension_mismatch, "matrix product shape mismatch");
        }
        MatrixQ c(a.m_rows, b.m_cols);
        for (std::size_t i = 0; i < a.m_rows; ++i) {
            for (std::size_t k = 0; k < a.m_cols; ++k) {
                const Scalar &aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.m_cols; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend bool operator==(const MatrixQ &a, const MatrixQ &b)
    {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }

    friend std::ostream &operator<<(std::ostream &os, const MatrixQ &m)
    {
        for (std::size_t i = 0; i < m.m_rows; ++i) {
            os << '[';
            for (std::size_t j = 0; j < m.m_cols; ++j) {
                os << (j ? ", " : "") << m(i, j);
            }
            os << "]\n";
        }
        return os;
    }

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<Scalar> m_data;
};

struct RrefResult {
    MatrixQ matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

namespace detail
{

// Fraction-free (Bareiss) forward elimination on an integer matrix. Leaves the first
// `rank` rows in row echelon form and returns their pivot columns. The sign of the
// accumulated row permutation is written to `sign` when non-null.
inline std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<Integer>> &a, std::size_t cols,
                                                int *sign = nullptr)
{
    std::vector<std::size_t> pivots;
    const std::size_t rows = a.size();
    Integer prev = 1;
    std::size_t pr = 0;
    int s = 1;
    for (std::size_t col = 0; col < cols && pr < rows; ++col) {
        std::size_t p = pr;
        while (p < rows && a[p][col] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != pr) {
            std::swap(a[p], a[pr]);
            s = -s;
        }
        const Integer &piv = a[pr][col];
        for (std::size_t i = pr + 1; i < rows; ++i) {
            auto &ri = a[i];
            const Integer lead = ri[col];
            for (std::size_t j = col + 1; j < cols; ++j) {
                ri[j] = piv * ri[j] - lead * a[pr][j];
                mpz_divexact(ri[j].get_mpz_t(), ri[j].get_mpz_t(), prev.get_mpz_t());
            }
            ri[col] = 0;
        }
        prev = piv;
        pivots.push_back(col);
        ++pr;
    }
    if (sign != nullptr) {
        *sign = s;
    }
    return pivots;
}

} // namespace detail

// Canonical reduced row echelon form. Elimination is fraction-free over the integers
// (rows are first scaled to primitive integer vectors, which preserves the row space);
// a final rational pass normalizes pivots to 1 and clears entries above them.
inline RrefResult rref(const MatrixQ &m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Integer>> a;
    a.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        a.push_back(primitive_integer_vector(m.row(i)));
    }
    auto pivots = detail::bareiss_echelon(a, cols);
    const std::size_t rank = pivots.size();

    std::vector<std::vector<Scalar>> r(rank, std::vector<Scalar>(cols));
    for (std::size_t i = 0; i < rank; ++i) {
        const Integer &piv = a[i][pivots[i]];
        for (std::size_t j = pivots[i]; j < cols; ++j) {
            if (a[i][j] != 0) {
                r[i][j] = make_scalar(a[i][j], piv);
            }
        }
    }
    for (std::size_t i = rank; i-- > 0;) {
        for (std::size_t u = 0; u < i; ++u) {
            const Scalar c = r[u][pivots[i]];
            if (c == 0) {
                continue;
            }
            for (std::size_t j = pivots[i]; j < cols; ++j) {
                if (r[i][j] != 0) {
                    r[u][j] -= c * r[i][j];
                }
            }
        }
    }

    RrefResult out;
    out.matrix = MatrixQ(rows, cols);
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out.matrix(i, j) = std::move(r[i][j]);
        }
    }
    out.rank = rank;
    out.pivots = std::move(pivots);
    return out;
}

inline std::size_t rank(const MatrixQ &m)
{
    std::vector<std::vector<Integer>> a;
    a.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        a.push_back(primitive_integer_vector(m.row(i)));
    }
    return detail::bareiss_echelon(a, m.cols()).size();
}

inline Scalar determinant(const MatrixQ &m)
{
    if (m.rows() != m.cols()) {
        throw PreconditionError(Precondition::dimension_mismatch, "determinant of a non-square matrix");
    }
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    // Row i is scaled by den_i / content_i to become integral; undo that at the end.
    std::vector<std::vector<Integer>> a;
    Scalar scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = m.row(i);
        auto prim = primitive_integer_vector(row);
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] != 0) {
                scale *= row[j] / Scalar(prim[j]);
                break;
            }
        }
        a.push_back(std::move(prim));
    }
    int sign = 1;
    const auto pivots = detail::bareiss_echelon(a, n, &sign);
    if (pivots.size() < n) {
        return 0;
    }
    return Scalar(a[n - 1][n - 1]) * scale * sign;
}

inline MatrixQ inverse(const MatrixQ &m)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) {
        throw PreconditionError(Precondition::dimension_mismatch, "inverse of a non-square matrix");
    }
    MatrixQ aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = 1;
    }
    const auto r = rref(aug);
    if (r.rank < n || r.pivots[n - 1] != n - 1) {
        throw PreconditionError(Precondition::singular_matrix, "matrix is not invertible");
    }
    MatrixQ inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = r.matrix(i, n + j);
        }
    }
    return inv;
}

// Graded piece a subspace lives in: the degree-t part of a polynomial ring in nvars
// variables, coordinates indexed by monomial_basis(nvars, t).
struct Grading {
    unsigned degree = 0;
    std::size_t nvars = 0;
    friend bool operator==(const Grading &, const Grading &) = default;
};

// Linear subspace of Q^ambient with its canonical RREF basis. Two subspaces are equal
// as sets iff their bases are identical.
class Subspace
{
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient, std::optional<Grading> grading = std::nullopt)
    {
        Subspace s;
        s.m_ambient = ambient;
        s.m_grading = grading;
        s.m_basis = MatrixQ(0, ambient);
        return s;
    }
    static Subspace full(std::size_t ambient, std::optional<Grading> grading = std::nullopt)
    {
        Subspace s = zero(ambient, grading);
        s.m_basis = MatrixQ::identity(ambient);
        s.m_pivots.resize(ambient);
        for (std::size_t i = 0; i < ambient; ++i) {
            s.m_pivots[i] = i;
        }
        return s;
    }
    // Row space of `m`.
    static Subspace row_space(const MatrixQ &m, std::optional<Grading> grading = std::nullopt)
    {
        auto r = rref(m);
        Subspace s;
        s.m_ambient = m.cols();
        s.m_grading = grading;
        s.m_basis = MatrixQ(r.rank, m.cols());
        for (std::size_t i = 0; i < r.rank; ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                s.m_basis(i, j) = r.matrix(i, j);
            }
        }
        s.m_pivots = std::move(r.pivots);
        return s;
    }

    std::size_t ambient_dim() const noexcept
    {
        return m_ambient;
    }
    std::size_t dim() const noexcept
    {
        return m_basis.rows();
    }
    const std::optional<Grading> &grading() const noexcept
    {
        return m_grading;
    }
    const MatrixQ &basis() const noexcept
    {
        return m_basis;
    }
    const std::vector<std::size_t> &pivots() const noexcept
    {
        return m_pivots;
    }
    std::vector<std::vector<Scalar>> basis_vectors() const
    {
        std::vector<std::vector<Scalar>> out;
        out.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            out.push_back(m_basis.row(i));
        }
        return out;
    }

    bool contains(const std::vector<Scalar> &v) const;

    friend bool operator==(const Subspace &a, const Subspace &b)
    {
        return a.m_ambient == b.m_ambient && a.m_grading == b.m_grading && a.m_basis == b.m_basis;
    }

private:
    friend class RowSpaceBuilder;

    std::size_t m_ambient = 0;
    std::optional<Grading> m_grading;
    MatrixQ m_basis;
    std::vector<std::size_t> m_pivots;
};

// Incrementally maintained reduced row echelon basis. Adding a vector costs one pass per
// pivot column it touches, which keeps sparse spanning sets cheap.
class RowSpaceBuilder
{
public:
    explicit RowSpaceBuilder(std::size_t ambient) : m_ambient(ambient), m_row_of_pivot(ambient, -1) {}

    std::size_t ambient_dim() const noexcept
    {
        return m_ambient;
    }
    std::size_t rank() const noexcept
    {
        return m_rows.size();
    }
    bool is_full() const noexcept
    {
        return m_rows.size() == m_ambient;
    }

    // Returns true when `v` was independent of the current span.
    bool add(std::vector<Scalar> v)
    {
        if (v.size() != m_ambient) {
            throw PreconditionError(Precondition::dimension_mismatch, "vector length does not match ambient dimension");
        }
        if (is_full()) {
            return false;
        }
        // Rows are zero at every other pivot column, so each pivot is visited once.
        for (std::size_t c = 0; c < m_ambient; ++c) {
            if (m_row_of_pivot[c] < 0 || v[c] == 0) {
                continue;
            }
            const Scalar coef = v[c];
            const auto &row = m_rows[static_cast<std::size_t>(m_row_of_pivot[c])];
            for (std::size_t j = c; j < m_ambient; ++j) {
                if (row[j] != 0) {
                    v[j] -= coef * row[j];
                }
            }
        }
        std::size_t q = 0;
        while (q < m_ambient && v[q] == 0) {
            ++q;
        }
        if (q == m_ambient) {
            return false;
        }
        if (v[q] != 1) {
            const Scalar inv = 1 / v[q];
            for (std::size_t j = q; j < m_ambient; ++j) {
                if (v[j] != 0) {
                    v[j] *= inv;
                }
            }
        }
        for (auto &row : m_rows) {
            if (row[q] == 0) {
                continue;
            }
            const Scalar coef = row[q];
            for (std::size_t j = q; j < m_ambient; ++j) {
                if (v[j] != 0) {
                    row[j] -= coef * v[j];
                }
            }
        }
        m_row_of_pivot[q] = static_cast<long>(m_rows.size());
        m_rows.push_back(std::move(v));
        return true;
    }

    // Residue of `v` modulo the current span (zero iff v lies in it).
    bool reduces_to_zero(std::vector<Scalar> v) const
    {
        for (std::size_t c = 0; c < m_ambient; ++c) {
            if (m_row_of_pivot[c] < 0 || v[c] == 0) {
                continue;
            }
            const Scalar coef = v[c];
            const auto &row = m_rows[static_cast<std::size_t>(m_row_of_pivot[c])];
            for (std::size_t j = c; j < m_ambient; ++j) {
                if (row[j] != 0) {
                    v[j] -= coef * row[j];
                }
            }
        }
        return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return x == 0; });
    }

    Subspace build(std::optional<Grading> grading = std::nullopt) const
    {
        Subspace s;
        s.m_ambient = m_ambient;
        s.m_grading = grading;
        s.m_basis = MatrixQ(m_rows.size(), m_ambient);
        std::size_t i = 0;
        for (std::size_t c = 0; c < m_ambient; ++c) {
            if (m_row_of_pivot[c] < 0) {
                continue;
            }
            const auto &row = m_rows[static_cast<std::size_t>(m_row_of_pivot[c])];
            for (std::size_t j = 0; j < m_ambient; ++j) {
                s.m_basis(i, j) = row[j];
            }
            s.m_pivots.push_back(c);
            ++i;
        }
        return s;
    }

private:
    std::size_t m_ambient;
    std::vector<long> m_row_of_pivot;
    std::vector<std::vector<Scalar>> m_rows;
};

inline bool Subspace::contains(const std::vector<Scalar> &v) const
{
    RowSpaceBuilder b(m_ambient);
    for (std::size_t i = 0; i < dim(); ++i) {
        b.add(m_basis.row(i));
    }
    return b.reduces_to_zero(v);
}

// Right null space {v : M v = 0} as a canonical subspace of Q^cols.
inline Subspace kernel_basis(const MatrixQ &m, std::optional<Grading> grading = std::nullopt)
{
    const auto r = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : r.pivots) {
        is_pivot[p] = true;
    }
    RowSpaceBuilder b(cols);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Scalar> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) {
            v[r.pivots[i]] = -r.matrix(i, f);
        }
        b.add(std::move(v));
    }
    return b.build(grading);
}

inline std::size_t span_dim(const std::vector<std::vector<Scalar>> &vectors)
{
    if (vectors.empty()) {
        return 0;
    }
    const std::size_t len = vectors.front().size();
    RowSpaceBuilder b(len);
    for (const auto &v : vectors) {
        if (v.size() != len) {
            throw PreconditionError(Precondition::dimension_mismatch, "vectors of different lengths");
        }
        b.add(v);
    }
    return b.rank();
}

inline Subspace subspace_sum(const Subspace &u, const Subspace &w)
{
    if (u.ambient_dim() != w.ambient_dim() || u.grading() != w.grading()) {
        throw PreconditionError(Precondition::dimension_mismatch, "subspaces live in different ambient spaces");
    }
    RowSpaceBuilder b(u.ambient_dim());
    for (std::size_t i = 0; i < u.dim(); ++i) {
        b.add(u.basis().row(i));
    }
    for (std::size_t i = 0; i < w.dim() && !b.is_full(); ++i) {
        b.add(w.basis().row(i));
    }
    return b.build(u.grading());
}

} // namespace apolar

#endif
