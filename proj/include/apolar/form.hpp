#ifndef APOLAR_FORM_HPP
#define APOLAR_FORM_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <apolar/errors.hpp>
#include <apolar/exponent.hpp>
#include <apolar/linalg.hpp>
#include <apolar/scalar.hpp>

namespace apolar
{

// Homogeneous polynomial of a fixed degree in nvars variables, stored sparsely in the
// plain monomial basis (f = sum c_I x^I). Zero coefficients are never stored.
//
// The same type serves for elements of the dual ring T = Q[y_0..y_n] acting by
// differentiation; only the printing letter differs.
class Form
{
public:
    using Terms = std::map<Exponent, Scalar, GrlexGreater>;

    Form() = default;
    Form(std::size_t nvars, unsigned degree) : m_nvars(nvars), m_degree(degree) {}

    static Form monomial(const Exponent &e, Scalar c = 1)
    {
        Form f(e.nvars(), e.degree());
        f.add_term(e, std::move(c));
        return f;
    }
    // The linear form sum coeffs[i] x_i.
    static Form linear(const std::vector<Scalar> &coeffs)
    {
        Form f(coeffs.size(), 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            f.add_term(Exponent::unit(coeffs.size(), i), coeffs[i]);
        }
        return f;
    }
    // Inverse of coefficient_vector().
    static Form from_coefficients(std::size_t nvars, unsigned degree, const std::vector<Scalar> &coeffs)
    {
        const MonomialIndex idx(nvars, degree);
        if (coeffs.size() != idx.size()) {
            throw PreconditionError(Precondition::dimension_mismatch, "coefficient vector has the wrong length");
        }
        Form f(nvars, degree);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            f.add_term(idx[i], coeffs[i]);
        }
        return f;
    }

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    unsigned degree() const noexcept
    {
        return m_degree;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    std::size_t num_terms() const noexcept
    {
        return m_terms.size();
    }
    const Terms &terms() const noexcept
    {
        return m_terms;
    }

    Scalar coefficient(const Exponent &e) const
    {
        const auto it = m_terms.find(e);
        return it == m_terms.end() ? Scalar(0) : it->second;
    }

    void add_term(const Exponent &e, const Scalar &c)
    {
        if (e.nvars() != m_nvars || e.degree() != m_degree) {
            throw PreconditionError(Precondition::dimension_mismatch, "term does not match the form's shape");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    // Coefficients over monomial_basis(nvars, degree).
    std::vector<Scalar> coefficient_vector(const MonomialIndex &idx) const
    {
        std::vector<Scalar> v(idx.size());
        for (const auto &[e, c] : m_terms) {
            v[idx.index_of(e)] = c;
        }
        return v;
    }
    std::vector<Scalar> coefficient_vector() const
    {
        return coefficient_vector(MonomialIndex(m_nvars, m_degree));
    }

    Form &operator+=(const Form &o)
    {
        check_same_shape(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }
    Form &operator-=(const Form &o)
    {
        check_same_shape(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, -c);
        }
        return *this;
    }
    Form &operator*=(const Scalar &s)
    {
        if (s == 0) {
            m_terms.clear();
            return *this;
        }
        for (auto &[e, c] : m_terms) {
            c *= s;
        }
        return *this;
    }
    friend Form operator+(Form a, const Form &b)
    {
        return a += b;
    }
    friend Form operator-(Form a, const Form &b)
    {
        return a -= b;
    }
    friend Form operator-(Form a)
    {
        return a *= Scalar(-1);
    }
    friend Form operator*(Form a, const Scalar &s)
    {
        return a *= s;
    }
    friend Form operator*(const Scalar &s, Form a)
    {
        return a *= s;
    }
    // Ordinary polynomial product; degrees add.
    friend Form operator*(const Form &a, const Form &b)
    {
        if (a.m_nvars != b.m_nvars) {
            throw PreconditionError(Precondition::dimension_mismatch, "product of forms in different rings");
        }
        Form r(a.m_nvars, a.m_degree + b.m_degree);
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const Form &a, const Form &b)
    {
        return a.m_nvars == b.m_nvars && a.m_degree == b.m_degree && a.m_terms == b.m_terms;
    }

private:
    void check_same_shape(const Form &o) const
    {
        if (o.m_nvars != m_nvars || o.m_degree != m_degree) {
            throw PreconditionError(Precondition::dimension_mismatch, "forms of different shape");
        }
    }

    std::size_t m_nvars = 0;
    unsigned m_degree = 0;
    Terms m_terms;
};

inline Form pow(const Form &f, unsigned e)
{
    Form r = Form::monomial(Exponent(f.nvars()));
    for (unsigned i = 0; i < e; ++i) {
        r = r * f;
    }
    return r;
}

// Same polynomial viewed in more variables (new ones appended at the end).
inline Form extend_variables(const Form &f, std::size_t nvars)
{
    if (nvars < f.nvars()) {
        throw PreconditionError(Precondition::dimension_mismatch, "cannot drop variables by extension");
    }
    Form r(nvars, f.degree());
    for (const auto &[e, c] : f.terms()) {
        auto entries = e.entries();
        entries.resize(nvars, 0u);
        r.add_term(Exponent(std::move(entries)), c);
    }
    return r;
}

// Drops trailing variables; every term must avoid them.
inline Form truncate_variables(const Form &f, std::size_t nvars)
{
    Form r(nvars, f.degree());
    for (const auto &[e, c] : f.terms()) {
        for (std::size_t i = nvars; i < e.nvars(); ++i) {
            if (e[i] != 0) {
                throw PreconditionError(Precondition::dimension_mismatch, "form uses a dropped variable");
            }
        }
        std::vector<unsigned> entries(e.entries().begin(), e.entries().begin() + static_cast<std::ptrdiff_t>(nvars));
        r.add_term(Exponent(std::move(entries)), c);
    }
    return r;
}

// ----------------------------------------------------------------------------
// Text I/O

inline std::string format_form(const Form &f, char var = 'x')
{
    if (f.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : f.terms()) {
        const bool neg = c < 0;
        const Scalar mag = neg ? Scalar(-c) : c;
        if (first) {
            os << (neg ? "-" : "");
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || e.degree() == 0) {
            os << mag;
            wrote = true;
        }
        for (std::size_t i = 0; i < e.nvars(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            os << (wrote ? "*" : "") << var << i;
            if (e[i] > 1) {
                os << '^' << e[i];
            }
            wrote = true;
        }
    }
    return os.str();
}

inline std::ostream &operator<<(std::ostream &os, const Form &f)
{
    return os << format_form(f);
}

namespace detail
{

class FormParser
{
public:
    FormParser(std::string_view text, char var) : m_text(text), m_var(var) {}

    // Parses the whole input; nvars == 0 means "infer from the largest index".
    Form parse(std::size_t nvars)
    {
        struct RawTerm {
            Scalar coeff;
            std::vector<unsigned> exps;
            std::size_t pos;
        };
        std::vector<RawTerm> raw;
        skip_ws();
        bool negate = false;
        if (peek() == '-') {
            negate = true;
            ++m_pos;
        }
        for (;;) {
            const std::size_t start = position();
            auto [coeff, exps] = parse_term();
            RawTerm t{std::move(coeff), std::move(exps), start};
            if (negate) {
                t.coeff = -t.coeff;
            }
            raw.push_back(std::move(t));
            skip_ws();
            if (at_end()) {
                break;
            }
            const char c = peek();
            if (c != '+' && c != '-') {
                throw ParseError(std::string("expected '+' or '-' but found '") + c + "'", m_pos);
            }
            negate = c == '-';
            ++m_pos;
        }

        std::size_t width = 0;
        for (const auto &t : raw) {
            width = std::max(width, t.exps.size());
        }
        if (nvars == 0) {
            nvars = std::max<std::size_t>(width, 1);
        } else if (width > nvars) {
            throw InputError("variable index " + std::to_string(width - 1) + " is out of range for "
                             + std::to_string(nvars) + " variables");
        }
        std::optional<unsigned> degree;
        for (const auto &t : raw) {
            unsigned deg = 0;
            for (auto x : t.exps) {
                deg += x;
            }
            if (degree && *degree != deg) {
                throw InputError("inhomogeneous form: term at position " + std::to_string(t.pos) + " has degree "
                                 + std::to_string(deg) + ", expected " + std::to_string(*degree));
            }
            degree = deg;
        }
        Form f(nvars, *degree);
        for (auto &t : raw) {
            t.exps.resize(nvars, 0u);
            f.add_term(Exponent(std::move(t.exps)), t.coeff);
        }
        return f;
    }

private:
    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return at_end() ? '\0' : m_text[m_pos];
    }
    std::size_t position()
    {
        skip_ws();
        return m_pos;
    }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }
    Integer parse_int()
    {
        skip_ws();
        const std::size_t start = m_pos;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        if (start == m_pos) {
            throw ParseError(at_end() ? "unexpected end of input, expected an integer"
                                      : std::string("expected an integer but found '") + peek() + "'",
                             start);
        }
        return Integer(std::string(m_text.substr(start, m_pos - start)));
    }
    unsigned parse_small(const char *what)
    {
        const std::size_t start = position();
        const Integer v = parse_int();
        if (!v.fits_uint_p() || v > 1000000) {
            throw ParseError(std::string(what) + " is too large", start);
        }
        return static_cast<unsigned>(v.get_ui());
    }

    // term := coeff | coeff '*' mono | mono
    std::pair<Scalar, std::vector<unsigned>> parse_term()
    {
        skip_ws();
        std::vector<unsigned> exps;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            parse_monomial(exps);
            return {Scalar(1), std::move(exps)};
        }
        const Integer num = parse_int();
        Integer den = 1;
        skip_ws();
        if (peek() == '/') {
            ++m_pos;
            const std::size_t dpos = position();
            den = parse_int();
            if (den == 0) {
                throw ParseError("zero denominator", dpos);
            }
            skip_ws();
        }
        if (peek() == '*') {
            ++m_pos;
            parse_monomial(exps);
        }
        return {make_scalar(num, den), std::move(exps)};
    }

    void parse_monomial(std::vector<unsigned> &exps)
    {
        for (;;) {
            skip_ws();
            if (peek() != m_var) {
                throw ParseError(at_end() ? std::string("unexpected end of input, expected '") + m_var + "'"
                                          : std::string("expected '") + m_var + "' but found '" + peek() + "'",
                                 m_pos);
            }
            ++m_pos;
            const unsigned index = parse_small("variable index");
            unsigned power = 1;
            skip_ws();
            if (peek() == '^') {
                ++m_pos;
                power = parse_small("exponent");
            }
            if (exps.size() <= index) {
                exps.resize(index + 1, 0u);
            }
            exps[index] += power;
            skip_ws();
            if (peek() != '*') {
                return;
            }
            ++m_pos;
        }
    }

    std::string_view m_text;
    char m_var;
    std::size_t m_pos = 0;
};

} // namespace detail

// Parses `text` by the grammar
//   form := ['-'] term (('+'|'-') term)* ; term := coeff | coeff '*' mono | mono ;
//   mono := factor ('*' factor)* ; factor := 'x' INT ['^' INT] ; coeff := INT ['/' INT]
// nvars == 0 infers the variable count from the largest index used.
inline Form parse_form(std::string_view text, std::size_t nvars = 0, char var = 'x')
{
    return detail::FormParser(text, var).parse(nvars);
}

// ----------------------------------------------------------------------------
// Differentiation and coordinate changes

// g(d/dx_0, ..., d/dx_n) applied to f: d^J x^I = I!/(I-J)! x^(I-J) when J <= I, else 0.
inline Form apply_diff(const Form &g, const Form &f)
{
    if (g.nvars() != f.nvars()) {
        throw PreconditionError(Precondition::dimension_mismatch, "operator and form have different variable counts");
    }
    if (g.degree() > f.degree()) {
        throw PreconditionError(Precondition::out_of_range, "operator degree exceeds form degree");
    }
    Form r(f.nvars(), f.degree() - g.degree());
    for (const auto &[ej, cj] : g.terms()) {
        for (const auto &[ei, ci] : f.terms()) {
            if (!ej.divides(ei)) {
                continue;
            }
            Integer falling = 1;
            for (std::size_t v = 0; v < ei.nvars(); ++v) {
                for (unsigned m = 0; m < ej[v]; ++m) {
                    falling *= ei[v] - m;
                }
            }
            r.add_term(ei - ej, cj * ci * Scalar(falling));
        }
    }
    return r;
}

// a_I = c_I * i_0! ... i_n!, the coefficient of f in the divided-power basis X^I = x^I / I!.
inline Scalar scaled_coefficient(const Form &f, const Exponent &e)
{
    if (e.nvars() != f.nvars() || e.degree() != f.degree()) {
        throw PreconditionError(Precondition::dimension_mismatch, "exponent does not match the form's degree");
    }
    Scalar c = f.coefficient(e);
    if (c == 0) {
        return c;
    }
    for (auto i : e.entries()) {
        c *= Scalar(factorial(i));
    }
    return c;
}

// Invertible (n+1)x(n+1) matrix acting on forms by x_i -> sum_j A_ij x_j.
class LinearChange
{
public:
    explicit LinearChange(MatrixQ a) : m_a(std::move(a))
    {
        if (m_a.rows() != m_a.cols()) {
            throw PreconditionError(Precondition::dimension_mismatch, "coordinate change must be square");
        }
        if (determinant(m_a) == 0) {
            throw PreconditionError(Precondition::singular_matrix, "coordinate change is not invertible");
        }
    }

    static LinearChange identity(std::size_t n)
    {
        return LinearChange(MatrixQ::identity(n));
    }

    std::size_t size() const noexcept
    {
        return m_a.rows();
    }
    const MatrixQ &matrix() const noexcept
    {
        return m_a;
    }
    LinearChange inverse() const
    {
        return LinearChange(apolar::inverse(m_a));
    }
    friend LinearChange operator*(const LinearChange &a, const LinearChange &b)
    {
        return LinearChange(a.m_a * b.m_a);
    }

private:
    MatrixQ m_a;
};

// f(A x). A right action: substitute(substitute(f, A), B) == substitute(f, A * B).
inline Form substitute_linear(const Form &f, const LinearChange &change)
{
    const std::size_t n = f.nvars();
    if (change.size() != n) {
        throw PreconditionError(Precondition::dimension_mismatch, "coordinate change has the wrong size");
    }
    const MatrixQ &a = change.matrix();
    // powers[i][k] = (row i of A . x)^k
    std::vector<std::vector<Form>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i].push_back(Form::monomial(Exponent(n)));
        powers[i].push_back(Form::linear(a.row(i)));
    }
    auto power = [&](std::size_t i, unsigned k) -> const Form & {
        while (powers[i].size() <= k) {
            powers[i].push_back(powers[i].back() * powers[i][1]);
        }
        return powers[i][k];
    };
    Form r(n, f.degree());
    for (const auto &[e, c] : f.terms()) {
        Form term = Form::monomial(Exponent(n), c);
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] != 0) {
                term = term * power(i, e[i]);
            }
        }
        r += term;
    }
    return r;
}

} // namespace apolar

#endif
