#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modgraph/graph.hpp"
#include "modgraph/numbers.hpp"
#include "modgraph/rng.hpp"
#include "modgraph/series.hpp"

namespace modgraph {

enum class PrimeClassKind { Finite, Paths, Custom };

// One isomorphism class of the prime set, standing for all of its labelings.
struct PrimeRepresentative {
  LabeledGraph graph;
  std::uint64_t automorphisms = 1;
  BigInt labelings;
};

struct CustomClassSpec {
  std::string name = "custom";
  // n -> number of labeled primes of size n.
  std::function<BigInt(std::size_t)> count;
  // (G, n) -> sum over primes H of size n of the labeled occurrences of G in H.
  std::function<BigInt(const LabeledGraph&, std::size_t)> occurrences;
  std::function<bool(const LabeledGraph&)> contains;
  // Uniform labeled prime of the given size; optional, needed only for sampling.
  std::function<LabeledGraph(std::size_t, RngStream&)> sample;
  double radius = std::numeric_limits<double>::infinity();
  // P'(radius^-) if known; +inf when it diverges.
  std::optional<double> boundary_derivative;
};

// The set of primes allowed as decorations, closed under relabeling.
class PrimeClass {
 public:
  static PrimeClass empty();
  // Duplicates up to isomorphism are merged; every graph must be prime.
  static PrimeClass finite(const std::vector<LabeledGraph>& primes);
  static PrimeClass paths();
  static PrimeClass custom(CustomClassSpec spec);

  PrimeClassKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double radius() const { return radius_; }
  // Largest prime size for finite classes; SIZE_MAX otherwise.
  std::size_t max_prime_size() const;
  const std::vector<PrimeRepresentative>& representatives() const { return reps_; }

  BigInt count(std::size_t n) const;
  bool contains(const LabeledGraph& g) const;
  // Sum over primes H of size n of the labeled occurrences of `pattern` in H.
  BigInt occurrence_total(const LabeledGraph& pattern, std::size_t n) const;

  bool can_sample() const;
  LabeledGraph sample_member(std::size_t n, RngStream& rng) const;

  const CustomClassSpec* custom_spec() const { return custom_.get(); }

 private:
  PrimeClassKind kind_ = PrimeClassKind::Finite;
  std::string name_;
  double radius_ = std::numeric_limits<double>::infinity();
  std::vector<PrimeRepresentative> reps_;
  std::shared_ptr<const CustomClassSpec> custom_;
};

BigInt class_count(const PrimeClass& cls, std::size_t n);

// P(z) = sum over primes of z^|H| / |H|!.
ExactSeries prime_series(const PrimeClass& cls, std::size_t order);
// m-th derivative of P at x; throws DivergenceError at or beyond the radius.
double prime_egf(const PrimeClass& cls, double x, int derivative, double tol = 1e-15);
// Lambda(w) = P(e^w - 1) + e^w - 1 - w and its first two derivatives.
double lambda_eval(const PrimeClass& cls, double w, int order, double tol = 1e-15);

// Occ_{G,P}(z) = sum over primes H of Occ_G(H) z^{|H|-|G|} / |H|!.
// Labeled occurrences by default; `labeled = false` counts up to isomorphism.
ExactSeries occ_series(const PrimeClass& cls, const LabeledGraph& pattern, std::size_t order,
                       bool labeled = true);
double occ_series_eval(const PrimeClass& cls, const LabeledGraph& pattern, double x,
                       double tol = 1e-15);

struct ConditionReport {
  bool holds = false;
  std::string reason;
  // Interval in w containing the root of Lambda'(w) = 1 when the condition holds.
  double kappa_lo = 0.0;
  double kappa_hi = 0.0;
};

ConditionReport check_condition_c(const PrimeClass& cls);

// JSON class file: {"kind": "finite", "primes": ["<graph text>", ...]} or {"kind": "paths"}.
PrimeClass parse_class_file(std::string_view text);
std::string format_class_file(const PrimeClass& cls);
// "builtin:paths", "builtin:empty", "builtin:p4", or a path to a class file.
PrimeClass load_class(const std::string& spec);

}  // namespace modgraph
