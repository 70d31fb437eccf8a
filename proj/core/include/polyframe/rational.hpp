#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace polyframe {

/// Arbitrary-precision rational in canonical form (gcd 1, positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// A point of some ambient rational space.
using Point = std::vector<Rational>;

/// Parses "n", "-n" or "n/d"; throws FormatError on anything else or d == 0.
Rational parse_rational(std::string_view text);

/// "n/d", or "n" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Decimal rendering with the given number of fractional digits (presentation only).
std::string format_decimal(const Rational& value, int digits);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& p);

/// Standard basis vector e_index in the given ambient dimension.
Point basis_vector(std::size_t ambient, std::size_t index);

/// Convex/affine combination sum_i weights[i] * points[i].
Point combine(const std::vector<Point>& points, const std::vector<Rational>& weights);

/// Lexicographic comparison of coordinates.
bool lex_less(const Point& a, const Point& b);

std::string format_point(const Point& p);

}  // namespace polyframe
