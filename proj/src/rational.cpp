#include "nsfrag/rational.hpp"

#include "nsfrag/error.hpp"

#include <cctype>

namespace nsfrag {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  bool negative = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    return end;
  };
  std::size_t int_end = digits(pos);
  if (int_end == pos) throw InvalidArgument("not a rational literal: '" + s + "'");
  Rational result(Integer(s.substr(pos, int_end - pos), 10));
  if (int_end < s.size() && s[int_end] == '.') {
    std::size_t frac_end = digits(int_end + 1);
    if (frac_end == int_end + 1 || frac_end != s.size())
      throw InvalidArgument("not a rational literal: '" + s + "'");
    std::string frac = s.substr(int_end + 1, frac_end - int_end - 1);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result += Rational(Integer(frac, 10), scale);
  } else if (int_end < s.size() && s[int_end] == '/') {
    std::size_t den_end = digits(int_end + 1);
    if (den_end == int_end + 1 || den_end != s.size())
      throw InvalidArgument("not a rational literal: '" + s + "'");
    Integer den(s.substr(int_end + 1, den_end - int_end - 1), 10);
    if (den == 0) throw DivisionByZero("zero denominator in '" + s + "'");
    result /= den;
  } else if (int_end != s.size()) {
    throw InvalidArgument("not a rational literal: '" + s + "'");
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

int sign(const Rational& q) { return sgn(q); }

Rational pow(const Rational& b, long e) {
  if (e < 0) {
    if (b == 0) throw DivisionByZero("zero raised to a negative power");
    return Rational(1) / pow(b, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

}  // namespace nsfrag
