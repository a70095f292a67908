#include "modgraph/numbers.hpp"

#include <cmath>
#include <limits>

namespace modgraph {

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt double_factorial(long k) {
  BigInt r = 1;
  if (k <= 0) return r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

double log_of(const BigInt& x) {
  if (sgn(x) <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_of(const Rational& x) {
  return log_of(BigInt(x.get_num())) - log_of(BigInt(x.get_den()));
}

double to_double(const Rational& x) { return x.get_d(); }

std::string to_string(const BigInt& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace modgraph
