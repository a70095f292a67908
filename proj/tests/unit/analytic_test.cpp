#include <cmath>

#include "doctest.h"
#include "modgraph/analytic.hpp"
#include "modgraph/decomposition.hpp"
#include "modgraph/prime_class.hpp"

using namespace modgraph;

TEST_CASE("constants of the empty class") {
  const ClassConstants c = solve_constants(PrimeClass::empty());
  CHECK(c.kappa == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(c.R == doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-12));
  CHECK(c.K == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.p == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("derivative identity") {
  for (const auto& cls : {PrimeClass::finite({LabeledGraph::path(4)}), PrimeClass::paths()}) {
    const ClassConstants c = solve_constants(cls);
    CHECK(c.derivative_identity == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.p + c.q == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gamma at half integers") {
  CHECK(gamma_half(1) == doctest::Approx(std::sqrt(M_PI)));
  CHECK(gamma_half(2) == doctest::Approx(1.0));
  CHECK(gamma_half(5) == doctest::Approx(std::tgamma(2.5)));
}

TEST_CASE("sample probabilities sum to one") {
  for (double p : {0.3, 0.5}) {
    double labeled = 0.0;
    for (std::uint64_t code = 0; code < 64; ++code)
      labeled += predict_sample_prob_labeled(graph_from_code(4, code), p);
    CHECK(labeled == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(predict_sample_prob(LabeledGraph::complete(2), p) == doctest::Approx(p));
    CHECK(predict_sample_prob(LabeledGraph::path(4), p) == 0.0);
  }
}

TEST_CASE("K_H for the P4 class") {
  const PrimeClass cls = PrimeClass::finite({LabeledGraph::path(4)});
  const ClassConstants c = solve_constants(cls);
  const AsymptoticPrediction pred = predict_KH(LabeledGraph::path(4), c, cls);
  CHECK(pred.exponent == Rational(3));
  CHECK(pred.K_H > 0.0);
  CHECK(predict_KH(LabeledGraph::complete(2), c, cls).K_H == doctest::Approx(c.p));
  CHECK(predict_KH(LabeledGraph::cycle(5), c, cls).K_H == 0.0);
}
