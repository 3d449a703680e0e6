#ifndef APOLAR_APOLAR_HPP
#define APOLAR_APOLAR_HPP

#include <apolar/catalecticant.hpp>
#include <apolar/errors.hpp>
#include <apolar/exponent.hpp>
#include <apolar/form.hpp>
#include <apolar/linalg.hpp>
#include <apolar/random.hpp>
#include <apolar/scalar.hpp>
#include <apolar/secant.hpp>
#include <apolar/table.hpp>
#include <apolar/tangent.hpp>

#endif
