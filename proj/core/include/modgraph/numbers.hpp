#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace modgraph {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
// k!! for k >= -1, with (-1)!! = 0!! = 1.
BigInt double_factorial(long k);

// Natural log of a positive integer without overflow; -inf for zero.
double log_of(const BigInt& x);
double log_of(const Rational& x);
double to_double(const Rational& x);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

}  // namespace modgraph
