#include "efbound/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "efbound/error.hpp"

namespace efbound {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  if (negative) p = -p;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool is_canonical(const Rational& value) {
  if (sgn(value.get_den()) <= 0) return false;
  Integer g = gcd(abs(value.get_num()), value.get_den());
  return g == 1;
}

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs) {
  if (lhs.size() != rhs.size()) throw InputError("dot: length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) acc += lhs[i] * rhs[i];
  return acc;
}

Integer denominator_lcm(std::span<const Rational> values) {
  Integer acc = 1;
  for (const auto& v : values) acc = lcm(acc, v.get_den());
  return acc;
}

Rational approximate(double value, long max_denominator) {
  if (!std::isfinite(value)) throw InputError("approximate: non-finite value");
  if (max_denominator < 1) throw InputError("approximate: max_denominator < 1");
  double floor_value = std::floor(value);
  double frac = value - floor_value;
  // Convergents h/k of frac; the integer part is added back at the end.
  long h_prev = 1, k_prev = 0, h = 0, k = 1;
  double x = frac;
  Rational best(0);
  for (int iter = 0; iter < 64 && x > 1e-15; ++iter) {
    double inv = 1.0 / x;
    long a = static_cast<long>(std::floor(inv));
    long h_next = a * h + h_prev;
    long k_next = a * k + k_prev;
    if (k_next > max_denominator) {
      // Largest admissible semiconvergent, kept only if it beats h/k.
      long t = (max_denominator - k_prev) / k;
      if (t > 0) {
        Rational semi(h_prev + t * h, k_prev + t * k);
        Rational conv(h, k);
        double err_semi = std::fabs(semi.get_d() - frac);
        double err_conv = std::fabs(conv.get_d() - frac);
        best = err_semi < err_conv ? semi : conv;
      } else {
        best = Rational(h, k);
      }
      best.canonicalize();
      return best + Rational(Integer(floor_value));
    }
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    x = inv - static_cast<double>(a);
  }
  best = Rational(h, k);
  best.canonicalize();
  return best + Rational(Integer(floor_value));
}

}  // namespace efbound
