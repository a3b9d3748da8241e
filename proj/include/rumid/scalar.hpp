#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace rumid {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Parses "p/q", an integer, or an exact decimal ("0.25", "-1.5") into a reduced
// rational. Exponent notation and anything else is rejected with
// std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string format_rational(const Rational& value);

// Approximate value for display only.
double to_double(const Rational& value);

Integer factorial(unsigned n);

}  // namespace rumid
