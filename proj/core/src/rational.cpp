#include "skt/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "skt/errors.hpp"

namespace skt {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                                : text.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw InputError("malformed rational '" + std::string(original) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("rational with zero denominator '" + std::string(original) + "'");
  if (negative) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::approximate(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw std::domain_error("cannot approximate non-finite value");
  // Convergents h/k of the continued fraction; stop before k exceeds the cap.
  const mpq_class exact(value);
  mpz_class num = exact.get_num();
  mpz_class den = exact.get_den();
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h2 = a * h1 + h0;
    mpz_class k2 = a * k1 + k0;
    if (k2 > max_denominator) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    mpz_class r = num - a * den;
    num = den;
    den = r;
  }
  if (k1 == 0) return Rational(mpq_class(exact));
  return Rational(mpq_class(h1, k1));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace skt
