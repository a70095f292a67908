#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "modgraph/analytic.hpp"
#include "modgraph/count_cache.hpp"
#include "modgraph/graph.hpp"
#include "modgraph/tree.hpp"

namespace modgraph {

struct NamedPattern {
  std::string name;
  LabeledGraph graph;
};

struct ExperimentConfig {
  std::vector<std::size_t> sizes;
  std::size_t samples = 100;
  // Random injections per sampled graph for Monte Carlo estimates.
  std::size_t injections = 1000;
  std::vector<NamedPattern> patterns;
  // Leaves of the induced subtree whose law is estimated; 0 disables.
  std::size_t subtree_leaves = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

struct ReportRow {
  std::size_t n = 0;
  std::string statistic;
  std::size_t samples = 0;
  double empirical = 0.0;
  double stderr_of_mean = 0.0;
  double predicted = 0.0;
  // empirical / predicted; NaN when the prediction is zero.
  double ratio = 0.0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  bool partial = false;

  const ReportRow* find(std::size_t n, const std::string& statistic) const;
  std::string to_csv() const;
};

// Locale-independent shortest round-trip decimal.
std::string format_double(double x);

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results stay in index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Stream index of the (experiment, size, replicate) cell; independent of the worker count.
std::uint64_t cell_stream(std::uint64_t experiment, std::size_t n, std::size_t replicate);

// Labeled occurrences |Aut H| times the number of induced copies of a prime H, read off the tree.
BigInt prime_occurrences(const SubstitutionTree& t, const LabeledGraph& h);

// For a finite class and a prime H: the expected labeled copies of H at a prime node given the
// node's size and decoration. Summed over the nodes of a uniform tree it is an unbiased estimate
// of E[Occ_H] with far smaller variance than the per-graph count.
class ConditionalOccurrence {
 public:
  ConditionalOccurrence(const CountCache& cache, const LabeledGraph& h, std::size_t max_size);
  static bool applicable(const CountCache& cache, const LabeledGraph& h);
  double total(const SubstitutionTree& t) const;

 private:
  std::size_t k_;
  std::uint64_t target_;
  double automorphisms_;
  // ratio_[d][m] = E[product of k given child sizes | arity d, size m].
  std::vector<std::vector<double>> ratio_;
};

// Occ_H(G) / n^|H| against P(Sample_|H| of the Brownian cographon is isomorphic to H),
// plus the induced-subtree law when subtree_leaves > 0.
ExperimentReport density_experiment(const CountCache& cache, const ClassConstants& constants,
                                    const ExperimentConfig& config);

// Law of the induced decorated subtree on subtree_leaves uniform marks.
ExperimentReport subtree_experiment(const CountCache& cache, const ClassConstants& constants,
                                    const ExperimentConfig& config);

// E[labeled Occ_H] n^{beta(H) - |H|} against K_H.
ExperimentReport scaling_experiment(const CountCache& cache, const ClassConstants& constants,
                                    const ExperimentConfig& config);

// Every graph on k vertices up to isomorphism whose decomposition uses only linear nodes.
std::vector<NamedPattern> cograph_patterns(std::size_t k);

}  // namespace modgraph
