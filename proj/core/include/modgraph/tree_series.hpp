#pragma once

#include <cstddef>
#include <vector>

#include "modgraph/prime_class.hpp"
#include "modgraph/series.hpp"
#include "modgraph/tree.hpp"

namespace modgraph {

// Generating series of decomposition trees with their blossomed variants, all at one order.
// A = T_not_join counts trees whose root is not a join (equivalently, not a union).
struct SeriesBundle {
  std::size_t order = 0;
  ExactSeries T;
  ExactSeries T_not_join;
  ExactSeries T_derivative;
  // T^join: one blossom, no join node directly above it.
  ExactSeries T_join;
  // Root not a join, blossom not directly under a join.
  ExactSeries T_not_join_join;
  // Root not a join, blossom not directly under a union.
  ExactSeries T_not_join_union;
  ExactSeries T_blossom;
  ExactSeries T_not_join_blossom;
  ExactSeries exp_A;
  ExactSeries exp_minus_A;
};

// Solves A = z + P(e^A - 1) + e^A - 1 - A degree by degree; T = e^A - 1.
SeriesBundle solve_tree_series(const PrimeClass& cls, std::size_t order);

struct EdgeProfile {
  std::size_t d_eq = 0;
  std::size_t d_neq = 0;
  std::size_t d_nbar_to_n = 0;
  std::size_t d_n_to_nbar = 0;
  std::size_t d_n_to_n = 0;
  std::size_t d_nbar_to_leaf = 0;
  std::size_t d_n_to_leaf = 0;
  // Internal nodes outside the node set.
  std::size_t n_L = 0;
  bool root_in_set = false;

  std::size_t edges() const {
    return d_eq + d_neq + d_nbar_to_n + d_n_to_nbar + d_n_to_n + d_nbar_to_leaf + d_n_to_leaf;
  }
};

// `in_set[i]` flags the i-th internal node of tau in preorder.
EdgeProfile edge_profile(const SubstitutionTree& tau, const std::vector<bool>& in_set);

// Node sets containing every non-linear node of tau.
std::vector<std::vector<bool>> admissible_node_sets(const SubstitutionTree& tau);

// EGF of marked trees (t, I) with t_I = tau whose node set is `in_set`.
ExactSeries t_tau_series(const SubstitutionTree& tau, const std::vector<bool>& in_set,
                         const PrimeClass& cls, const SeriesBundle& bundle);
// Sum over all admissible node sets.
ExactSeries t_tau_total(const SubstitutionTree& tau, const PrimeClass& cls,
                        const SeriesBundle& bundle);

}  // namespace modgraph
