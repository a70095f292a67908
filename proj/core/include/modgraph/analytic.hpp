#pragma once

#include <cstddef>
#include <vector>

#include "modgraph/graph.hpp"
#include "modgraph/numbers.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/tree.hpp"

namespace modgraph {

struct ClassConstants {
  double kappa = 0.0;  // Lambda'(kappa) = 1
  double R = 0.0;      // kappa - Lambda(kappa), radius of T
  double K = 0.0;      // e^kappa - 1
  double mu = 0.0;     // sqrt(2 R Lambda''(kappa))
  double C = 0.0;      // (1 + K) R / (mu sqrt(pi))
  double p = 0.0;      // join probability of the limiting cographon
  double lambda2 = 0.0;
  // 1 - p computed independently from the union-edge occurrence series.
  double q = 0.0;
  // (1 + K)(P'(K) + 1), equal to 2.
  double derivative_identity = 0.0;
};

ClassConstants solve_constants(const PrimeClass& cls, double tol = 1e-13);

// log(C n! / (R^n n^{3/2})).
double log_predicted_count(std::size_t n, const ClassConstants& c);
double predicted_count(std::size_t n, const ClassConstants& c);
// exact / predicted, computed in log space.
double count_ratio(const BigInt& exact, std::size_t n, const ClassConstants& c);

// Gamma(m / 2) for m >= 1.
double gamma_half(long m);

// Limit probability that the induced subtree on l uniform marks equals tau; zero unless binary.
double predict_subtree_prob(const SubstitutionTree& tau, double p);

// P(Sample_k of the Brownian cographon is isomorphic to H); k <= 8.
double predict_sample_prob(const LabeledGraph& h, double p);
// P(Sample_k = H) as labeled graphs.
double predict_sample_prob_labeled(const LabeledGraph& h, double p);

// Asymptotic constant of the marked-tree series summed over node sets, with the
// occurrence factor of each non-linear node weighted by (1 + K)^degree.
double tree_constant(const SubstitutionTree& tau, const ClassConstants& c, const PrimeClass& cls);
// B_tau sqrt(pi) / (R Gamma((e+1)/2)) n^{(e+2)/2 - l}: leading term of P(t_I = tau).
double predict_induced_tree(const SubstitutionTree& tau, std::size_t n, const ClassConstants& c,
                            const PrimeClass& cls);

struct AsymptoticPrediction {
  double K_H = 0.0;
  Rational exponent;  // |H| - beta(H)
};

// E[Occ_H(G_n)] ~ K_H n^{|H| - beta(H)} with labeled occurrences.
AsymptoticPrediction predict_KH(const LabeledGraph& h, const ClassConstants& c,
                                const PrimeClass& cls);

}  // namespace modgraph
