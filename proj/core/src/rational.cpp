#include "polyframe/rational.hpp"

#include "polyframe/error.hpp"

#include <cctype>

namespace polyframe {
namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer v{std::string(s)};
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto num = text.substr(0, slash);
  if (!is_integer_text(num)) throw FormatError("malformed rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));
  auto den = text.substr(slash + 1);
  if (!is_integer_text(den)) throw FormatError("malformed rational '" + std::string(text) + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string format_decimal(const Rational& value, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(value) * scale;
  // round half up on the magnitude
  Integer q = numerator(scaled) / denominator(scaled);
  Integer r = numerator(scaled) % denominator(scaled);
  if (2 * r >= denominator(scaled)) q += 1;
  std::string s = q.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  bool zero = q == 0;
  return (value < 0 && !zero ? "-" : "") + s;
}

Point operator+(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b.at(i);
  return out;
}

Point operator-(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b.at(i);
  return out;
}

Point operator*(const Rational& s, const Point& p) {
  Point out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = s * p[i];
  return out;
}

Point basis_vector(std::size_t ambient, std::size_t index) {
  Point p(ambient, Rational(0));
  p.at(index) = 1;
  return p;
}

Point combine(const std::vector<Point>& points, const std::vector<Rational>& weights) {
  if (points.empty()) return {};
  Point out(points.front().size(), Rational(0));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights.at(i) == 0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += weights[i] * points[i][k];
  }
  return out;
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += format_rational(p[i]);
  }
  return s + ")";
}

}  // namespace polyframe
