#ifndef APOLAR_ERRORS_HPP
#define APOLAR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apolar
{

// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. `position` is a 0-based byte offset into the input.
class ParseError : public Error
{
public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), m_position(position)
    {
    }

    std::size_t position() const noexcept
    {
        return m_position;
    }

private:
    std::size_t m_position;
};

// Input that is well formed but not homogeneous, or otherwise unusable as a form.
class InputError : public Error
{
public:
    using Error::Error;
};

enum class Precondition {
    out_of_range,
    dimension_mismatch,
    zero_form,
    singular_matrix,
    unsupported_degree,
    in_sigma2,
    not_in_sigma3,
    classification_failed,
};

inline const char *to_string(Precondition p) noexcept
{
    switch (p) {
        case Precondition::out_of_range:
            return "out-of-range";
        case Precondition::dimension_mismatch:
            return "dimension-mismatch";
        case Precondition::zero_form:
            return "zero-form";
        case Precondition::singular_matrix:
            return "singular-matrix";
        case Precondition::unsupported_degree:
            return "unsupported-degree";
        case Precondition::in_sigma2:
            return "in-sigma2";
        case Precondition::not_in_sigma3:
            return "not-in-sigma3";
        case Precondition::classification_failed:
            return "classification-failed";
    }
    return "unknown";
}

// A valid value passed to an operation whose preconditions it does not meet.
class PreconditionError : public Error
{
public:
    PreconditionError(Precondition kind, const std::string &what)
        : Error(std::string(to_string(kind)) + ": " + what), m_kind(kind)
    {
    }

    Precondition kind() const noexcept
    {
        return m_kind;
    }

private:
    Precondition m_kind;
};

} // namespace apolar

#endif
