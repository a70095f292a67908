#pragma once

#include <cstddef>
#include <vector>

#include "modgraph/numbers.hpp"
#include "modgraph/prime_class.hpp"

namespace modgraph {

// Labeled counts, n! [z^n], of the symbols of the tree grammar, with their natural logs.
// Read-only after construction and safe to share between threads.
class CountCache {
 public:
  struct Table {
    std::vector<BigInt> value;
    std::vector<double> log;  // -infinity where value is zero

    const BigInt& operator[](std::size_t n) const { return value[n]; }
  };

  CountCache(const PrimeClass& cls, std::size_t order);

  std::size_t order() const { return order_; }
  const PrimeClass& prime_class() const { return cls_; }

  // All trees.
  const Table& trees() const { return t_; }
  // Root is not a join; by symmetry also the count of trees whose root is not a union.
  const Table& not_join() const { return a_; }
  // Root is a join; equal to the union-rooted count.
  const Table& join() const { return s_; }
  // Sets of not-join trees, empty set included.
  const Table& sets() const { return e_; }
  // Root carries a prime decoration.
  const Table& prime() const { return pr_; }
  // Ordered j-tuples of trees, 1 <= j <= max_power().
  const Table& power(std::size_t j) const { return pow_.at(j); }
  std::size_t max_power() const { return pow_.size() - 1; }
  // Prime-rooted trees with root arity j (finite classes).
  const Table& prime_arity(std::size_t j) const { return arity_.at(j); }
  // Sequences of trees of any length, empty included (path class).
  const Table& sequences() const { return q_; }
  // Tuples of at least four trees (path class).
  const Table& long_tuples() const { return long_; }

  double log_binomial(std::size_t n, std::size_t k) const;

 private:
  PrimeClass cls_;
  std::size_t order_;
  bool paths_;
  Table t_, a_, s_, e_, pr_, q_, long_;
  std::vector<Table> pow_;
  std::vector<Table> arity_;
  std::vector<double> log_factorial_;
};

}  // namespace modgraph
