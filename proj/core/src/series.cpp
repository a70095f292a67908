#include "modgraph/series.hpp"

#include <algorithm>

#include "modgraph/errors.hpp"

namespace modgraph {

ExactSeries::ExactSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.emplace_back(0);
}

ExactSeries ExactSeries::constant(const Rational& value, std::size_t order) {
  ExactSeries s(order);
  s[0] = value;
  return s;
}

ExactSeries ExactSeries::variable(std::size_t order) {
  ExactSeries s(order);
  if (order >= 1) s[1] = 1;
  return s;
}

ExactSeries ExactSeries::monomial(std::size_t k, const Rational& coeff, std::size_t order) {
  ExactSeries s(order);
  if (k <= order) s[k] = coeff / Rational(factorial(k));
  return s;
}

BigInt ExactSeries::count(std::size_t n) const {
  Rational v = c_.at(n) * Rational(factorial(n));
  if (v.get_den() != 1) throw NumericError("series coefficient is not a count");
  return v.get_num();
}

std::size_t ExactSeries::valuation() const {
  for (std::size_t n = 0; n < c_.size(); ++n)
    if (sgn(c_[n]) != 0) return n;
  return c_.size();
}

ExactSeries ExactSeries::truncated(std::size_t order) const {
  std::vector<Rational> c(order + 1);
  for (std::size_t n = 0; n <= order && n < c_.size(); ++n) c[n] = c_[n];
  if (order > this->order())
    throw ContractViolation("cannot extend a truncated series beyond its order");
  return ExactSeries(std::move(c));
}

ExactSeries& ExactSeries::operator+=(const ExactSeries& other) {
  if (other.order() < order()) c_.resize(other.c_.size());
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += other.c_[n];
  return *this;
}

ExactSeries& ExactSeries::operator-=(const ExactSeries& other) {
  if (other.order() < order()) c_.resize(other.c_.size());
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= other.c_[n];
  return *this;
}

ExactSeries& ExactSeries::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

ExactSeries operator+(ExactSeries a, const ExactSeries& b) { return a += b; }
ExactSeries operator-(ExactSeries a, const ExactSeries& b) { return a -= b; }
ExactSeries operator*(ExactSeries a, const Rational& s) { return a *= s; }

ExactSeries operator*(const ExactSeries& a, const ExactSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  const std::size_t va = a.valuation(), vb = b.valuation();
  ExactSeries r(order);
  Rational term;
  for (std::size_t i = va; i <= order; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = vb; i + j <= order; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpq_mul(term.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
      r[i + j] += term;
    }
  }
  return r;
}

ExactSeries exp(const ExactSeries& a) {
  if (sgn(a[0]) != 0) throw ContractViolation("exp needs a zero constant term");
  const std::size_t order = a.order();
  ExactSeries e(order);
  e[0] = 1;
  Rational term;
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc;
    for (std::size_t k = 1; k <= n; ++k) {
      if (sgn(a[k]) == 0) continue;
      mpq_mul(term.get_mpq_t(), a[k].get_mpq_t(), e[n - k].get_mpq_t());
      acc += term * static_cast<unsigned long>(k);
    }
    e[n] = acc / static_cast<unsigned long>(n);
  }
  return e;
}

ExactSeries inverse(const ExactSeries& a) {
  if (sgn(a[0]) == 0) throw ContractViolation("inverse needs a nonzero constant term");
  const std::size_t order = a.order();
  ExactSeries r(order);
  r[0] = 1 / a[0];
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc;
    for (std::size_t k = 1; k <= n; ++k) acc += a[k] * r[n - k];
    r[n] = -acc * r[0];
  }
  return r;
}

ExactSeries log(const ExactSeries& a) {
  if (a[0] != 1) throw ContractViolation("log needs constant term 1");
  if (a.order() == 0) return ExactSeries(0);
  ExactSeries q = derive(a) * inverse(a.truncated(a.order() - 1));
  return integrate(q);
}

ExactSeries pow(const ExactSeries& a, std::size_t k) {
  ExactSeries r = ExactSeries::constant(1, a.order());
  ExactSeries base = a;
  while (k) {
    if (k & 1U) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

ExactSeries derive(const ExactSeries& a) {
  if (a.order() == 0) return ExactSeries(0);
  ExactSeries d(a.order() - 1);
  for (std::size_t n = 0; n < a.order(); ++n) d[n] = a[n + 1] * static_cast<unsigned long>(n + 1);
  return d;
}

ExactSeries integrate(const ExactSeries& a) {
  ExactSeries r(a.order() + 1);
  for (std::size_t n = 0; n <= a.order(); ++n) r[n + 1] = a[n] / static_cast<unsigned long>(n + 1);
  return r;
}

ExactSeries compose(const ExactSeries& a, const ExactSeries& b) {
  if (sgn(b[0]) != 0) throw ContractViolation("compose needs b(0) = 0");
  const std::size_t order = std::min(a.order(), b.order());
  ExactSeries r = ExactSeries::constant(a[0], order);
  ExactSeries power = ExactSeries::constant(1, order);
  const ExactSeries inner = b.truncated(order);
  for (std::size_t i = 1; i <= order; ++i) {
    power = power * inner;
    if (sgn(a[i]) == 0) continue;
    for (std::size_t n = i; n <= order; ++n) r[n] += a[i] * power[n];
  }
  return r;
}

ExactSeries shift(const ExactSeries& a, std::size_t k) {
  ExactSeries r(a.order());
  for (std::size_t n = k; n <= a.order(); ++n) r[n] = a[n - k];
  return r;
}

double evaluate(const ExactSeries& a, double x) {
  double acc = 0.0;
  for (std::size_t n = a.order() + 1; n-- > 0;) acc = acc * x + a[n].get_d();
  return acc;
}

}  // namespace modgraph
