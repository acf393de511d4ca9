#include "nsfrag/bivariate.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>

namespace nsfrag {

BivariatePolynomial::BivariatePolynomial(std::vector<Polynomial> rows) : rows_(std::move(rows)) { trim(); }

void BivariatePolynomial::trim() {
  while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
}

bool BivariatePolynomial::depends_on_w() const {
  return std::any_of(rows_.begin(), rows_.end(), [](const Polynomial& p) { return !p.is_constant(); });
}

Polynomial BivariatePolynomial::at_k(const Rational& k) const {
  Polynomial acc;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) acc = acc * Polynomial(k) + *it;
  return acc;
}

Polynomial BivariatePolynomial::diagonal() const {
  Polynomial acc;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) acc = acc * Polynomial::x() + *it;
  return acc;
}

Polynomial BivariatePolynomial::as_k_polynomial() const {
  if (depends_on_w()) throw InvalidArgument("family depends on w");
  std::vector<Rational> c;
  c.reserve(rows_.size());
  for (const auto& r : rows_) c.push_back(r.coeff(0));
  return Polynomial(std::move(c));
}

Polynomial BivariatePolynomial::w_coefficient(std::size_t j) const {
  std::vector<Rational> c;
  c.reserve(rows_.size());
  for (const auto& r : rows_) c.push_back(r.coeff(j));
  return Polynomial(std::move(c));
}

long BivariatePolynomial::w_degree() const {
  long d = -1;
  for (const auto& r : rows_) d = std::max(d, r.degree());
  return d;
}

BivariatePolynomial BivariatePolynomial::operator-() const {
  std::vector<Polynomial> r(rows_);
  for (auto& p : r) p = -p;
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  std::vector<Polynomial> r(std::max(a.rows_.size(), b.rows_.size()));
  for (std::size_t i = 0; i < a.rows_.size(); ++i) r[i] = r[i] + a.rows_[i];
  for (std::size_t i = 0; i < b.rows_.size(); ++i) r[i] = r[i] + b.rows_[i];
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a + (-b); }

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Polynomial> r(a.rows_.size() + b.rows_.size() - 1);
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    for (std::size_t j = 0; j < b.rows_.size(); ++j) r[i + j] = r[i + j] + a.rows_[i] * b.rows_[j];
  return BivariatePolynomial(std::move(r));
}

BivariateGerm::BivariateGerm(BivariatePolynomial num, BivariatePolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("family with zero denominator");
}

BivariateGerm::BivariateGerm(const Germ& g)
    : num_(BivariatePolynomial(g.numerator())), den_(BivariatePolynomial(g.denominator())) {}

Germ BivariateGerm::at(const Rational& k) const {
  Polynomial d = den_.at_k(k);
  if (d.is_zero())
    throw DegenerateDiagonal("family denominator vanishes identically at k = " + nsfrag::to_string(k));
  return Germ(num_.at_k(k), d);
}

Germ BivariateGerm::diagonal() const {
  Polynomial d = den_.diagonal();
  if (d.is_zero()) throw DegenerateDiagonal("family denominator vanishes identically on the diagonal");
  return Germ(num_.diagonal(), d);
}

Germ BivariateGerm::as_k_germ() const {
  if (depends_on_w()) throw InvalidArgument("family depends on w; expected a function of k alone");
  return Germ(num_.as_k_polynomial(), den_.as_k_polynomial());
}

std::vector<Integer> BivariateGerm::undefined_indices(const Integer& from) const {
  Polynomial g;
  for (long j = 0; j <= den_.w_degree(); ++j) g = Polynomial::gcd(g, den_.w_coefficient(static_cast<std::size_t>(j)));
  std::vector<Integer> out;
  if (g.is_constant()) return out;
  Integer hi = ceil(g.root_bound());
  for (Integer k = from < 0 ? Integer(0) : from; k <= hi; ++k)
    if (g.evaluate(Rational(k)) == 0) out.push_back(k);
  return out;
}

BivariateGerm operator+(const BivariateGerm& a, const BivariateGerm& b) {
  if (a.den_ == b.den_) return BivariateGerm(a.num_ + b.num_, a.den_);
  return BivariateGerm(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

BivariateGerm operator-(const BivariateGerm& a, const BivariateGerm& b) { return a + (-b); }

BivariateGerm operator*(const BivariateGerm& a, const BivariateGerm& b) {
  return BivariateGerm(a.num_ * b.num_, a.den_ * b.den_);
}

BivariateGerm operator/(const BivariateGerm& a, const BivariateGerm& b) {
  if (b.num_.is_zero()) throw DivisionByZero("division by the zero family");
  return BivariateGerm(a.num_ * b.den_, a.den_ * b.num_);
}

BivariateGerm BivariateGerm::pow(long e) const {
  if (e < 0) return (BivariateGerm(Rational(1)) / *this).pow(-e);
  BivariateGerm result(Rational(1));
  for (long i = 0; i < e; ++i) result = result * *this;
  return result;
}

Germ diagonal(const BivariateGerm& family) { return family.diagonal(); }

}  // namespace nsfrag
