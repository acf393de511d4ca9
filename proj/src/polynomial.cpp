#include "nsfrag/polynomial.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>

namespace nsfrag {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational Polynomial::evaluate(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Polynomial Polynomial::shifted(const Rational& shift) const {
  // Horner in the polynomial ring: acc = acc*(x + shift) + c
  Polynomial step(std::vector<Rational>{shift, Rational(1)});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * step + Polynomial(*it);
  return acc;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
  std::vector<Rational> v(coeffs_);
  for (auto& c : v) c *= factor;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading());
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs_);
  const std::size_t nb = b.coeffs_.size();
  if (rem.size() < nb) return {Polynomial(), a};
  std::vector<Rational> quot(rem.size() - nb + 1);
  const Rational& lead = b.coeffs_.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational q = rem[k + nb - 1] / lead;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) rem[k + j] -= q * b.coeffs_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Rational Polynomial::root_bound() const {
  if (is_zero()) throw DomainError("root bound of the zero polynomial");
  if (is_constant()) return 0;
  Rational lead = abs(leading());
  Rational worst = 0;
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) worst = std::max(worst, Rational(abs(coeffs_[i]) / lead));
  return 1 + worst;
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    bool first = out.empty();
    Rational mag = abs(c);
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    std::string term;
    if (k == 0 || mag != 1) term = nsfrag::to_string(mag);
    if (k > 0) {
      if (!term.empty()) term += "*";
      term += var;
      if (k > 1) term += "^" + std::to_string(k);
    }
    out += term;
  }
  return out;
}

}  // namespace nsfrag
