#include "modgraph/count_cache.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modgraph/errors.hpp"

namespace modgraph {

namespace {

void resize(CountCache::Table& table, std::size_t order) {
  table.value.assign(order + 1, BigInt(0));
  table.log.assign(order + 1, -std::numeric_limits<double>::infinity());
}

void set_log(CountCache::Table& table, std::size_t n) {
  if (sgn(table.value[n]) > 0) table.log[n] = log_of(table.value[n]);
}

// acc = sum over k in [lo, hi] of coef[k] * x[k] * y[n - k].
void convolve(BigInt& acc, const std::vector<BigInt>& coef, const std::vector<BigInt>& x,
              const std::vector<BigInt>& y, std::size_t n, std::size_t lo, std::size_t hi,
              BigInt& tmp) {
  acc = 0;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (sgn(x[k]) == 0 || sgn(y[n - k]) == 0) continue;
    mpz_mul(tmp.get_mpz_t(), coef[k].get_mpz_t(), x[k].get_mpz_t());
    mpz_addmul(acc.get_mpz_t(), tmp.get_mpz_t(), y[n - k].get_mpz_t());
  }
}

}  // namespace

CountCache::CountCache(const PrimeClass& cls, std::size_t order)
    : cls_(cls), order_(order), paths_(cls.kind() == PrimeClassKind::Paths) {
  if (cls.kind() == PrimeClassKind::Custom)
    throw ContractViolation("count cache supports finite classes and the path class");
  if (order < 1) throw ContractViolation("cache order must be at least 1");
  const std::size_t top = paths_ ? 4 : std::max<std::size_t>(1, std::min(order, cls.max_prime_size()));
  for (Table* table : {&t_, &a_, &s_, &e_, &pr_, &q_, &long_}) resize(*table, order);
  pow_.resize(top + 1);
  for (auto& table : pow_) resize(table, order);
  arity_.resize(top + 1);
  for (auto& table : arity_) resize(table, order);
  std::vector<BigInt> prime_counts(top + 1), fact(top + 1);
  if (!paths_)
    for (std::size_t j = 2; j <= top; ++j) prime_counts[j] = cls.count(j), fact[j] = factorial(j);
  e_.value[0] = 1;
  q_.value[0] = 1;
  pow_[0].value[0] = 1;

  std::vector<BigInt> prev{BigInt(1)}, cur;
  BigInt tmp;
  for (std::size_t n = 1; n <= order; ++n) {
    cur.assign(n + 1, BigInt(1));
    for (std::size_t k = 1; k < n; ++k) cur[k] = prev[k - 1] + prev[k];

    for (std::size_t j = 2; j <= top; ++j)
      convolve(pow_[j].value[n], cur, t_.value, pow_[j - 1].value, n, 1, n - 1, tmp);
    BigInt& pr = pr_.value[n];
    if (paths_) {
      if (n >= 4) convolve(long_.value[n], cur, pow_[4].value, q_.value, n, 4, n, tmp);
      mpz_divexact_ui(pr.get_mpz_t(), long_.value[n].get_mpz_t(), 2);
    } else {
      for (std::size_t j = 2; j <= top; ++j) {
        if (sgn(prime_counts[j]) == 0) continue;
        BigInt& slot = arity_[j].value[n];
        mpz_mul(slot.get_mpz_t(), prime_counts[j].get_mpz_t(), pow_[j].value[n].get_mpz_t());
        mpz_divexact(slot.get_mpz_t(), slot.get_mpz_t(), fact[j].get_mpz_t());
        pr += slot;
        set_log(arity_[j], n);
      }
    }
    // Join-rooted: the child holding the smallest label has size k < n.
    BigInt& s = s_.value[n];
    s = 0;
    for (std::size_t k = 1; k < n; ++k) {
      mpz_mul(tmp.get_mpz_t(), prev[k - 1].get_mpz_t(), a_.value[k].get_mpz_t());
      mpz_addmul(s.get_mpz_t(), tmp.get_mpz_t(), e_.value[n - k].get_mpz_t());
    }
    a_.value[n] = s + pr + (n == 1 ? 1 : 0);
    e_.value[n] = s + a_.value[n];
    t_.value[n] = a_.value[n] + s;
    pow_[1].value[n] = t_.value[n];
    convolve(q_.value[n], cur, t_.value, q_.value, n, 1, n, tmp);

    for (Table* table : {&t_, &a_, &s_, &e_, &pr_, &q_, &long_}) set_log(*table, n);
    for (std::size_t j = 1; j <= top; ++j) set_log(pow_[j], n);
    prev.swap(cur);
  }
  for (Table* table : {&e_, &q_, &pow_[0]}) set_log(*table, 0);
  log_factorial_.resize(order + 1);
  for (std::size_t n = 0; n <= order; ++n)
    log_factorial_[n] = std::lgamma(static_cast<double>(n) + 1.0);
}

double CountCache::log_binomial(std::size_t n, std::size_t k) const {
  return log_factorial_[n] - log_factorial_[k] - log_factorial_[n - k];
}

}  // namespace modgraph
