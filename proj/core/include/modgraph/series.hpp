#pragma once

#include <cstddef>
#include <vector>

#include "modgraph/numbers.hpp"

namespace modgraph {

// Truncated power series c_0 + c_1 z + ... + c_N z^N with exact rational coefficients.
// Read as an exponential generating function, n! c_n counts size-n objects.
class ExactSeries {
 public:
  ExactSeries() = default;
  explicit ExactSeries(std::size_t order) : c_(order + 1) {}
  explicit ExactSeries(std::vector<Rational> coeffs);

  static ExactSeries constant(const Rational& value, std::size_t order);
  static ExactSeries variable(std::size_t order);
  // z^k / k!, i.e. the EGF of a single size-k object.
  static ExactSeries monomial(std::size_t k, const Rational& coeff, std::size_t order);

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return c_[n]; }
  Rational& operator[](std::size_t n) { return c_[n]; }
  const std::vector<Rational>& coeffs() const { return c_; }
  // n! c_n; must be an integer for counting series.
  BigInt count(std::size_t n) const;
  std::size_t valuation() const;

  ExactSeries truncated(std::size_t order) const;

  ExactSeries& operator+=(const ExactSeries& other);
  ExactSeries& operator-=(const ExactSeries& other);
  ExactSeries& operator*=(const Rational& s);

  bool operator==(const ExactSeries& other) const { return c_ == other.c_; }

 private:
  std::vector<Rational> c_{Rational(0)};
};

ExactSeries operator+(ExactSeries a, const ExactSeries& b);
ExactSeries operator-(ExactSeries a, const ExactSeries& b);
ExactSeries operator*(const ExactSeries& a, const ExactSeries& b);
ExactSeries operator*(ExactSeries a, const Rational& s);

ExactSeries exp(const ExactSeries& a);
ExactSeries log(const ExactSeries& a);
ExactSeries inverse(const ExactSeries& a);
ExactSeries pow(const ExactSeries& a, std::size_t k);
ExactSeries derive(const ExactSeries& a);
ExactSeries integrate(const ExactSeries& a);
// a(b(z)); b must have zero constant term.
ExactSeries compose(const ExactSeries& a, const ExactSeries& b);
// z^k a(z) kept at the same order.
ExactSeries shift(const ExactSeries& a, std::size_t k);

double evaluate(const ExactSeries& a, double x);

}  // namespace modgraph
