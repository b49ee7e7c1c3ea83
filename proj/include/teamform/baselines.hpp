#pragma once

#include "teamform/core_model.hpp"
#include "teamform/solvers.hpp"

/*
 * Combinatorial comparison baselines. All of them are deterministic pure
 * functions returning a TeamResult whose objective_value is computed by
 * core_model's objective on the produced team.
 */

namespace teamform {

/* Pick the expert with the largest marginal coverage until k experts are
   selected or no expert adds coverage. Ties go to the lowest index. */
TeamResult greedy_max_k_cover(const ProblemInstance& inst);

/* Cost-scaled greedy for linear hiring costs: repeatedly add the expert
   maximizing lambda * (marginal coverage) - scale * kappa_i while that score
   stays strictly positive. Ties go to the lowest index. */
TeamResult greedy_cost_scaled(const ProblemInstance& inst, double scale = 2.0);

/* Coverage-per-coordination-cost greedy for graph costs: among experts whose
   addition strictly improves F, pick the best (marginal coverage) /
   (marginal coordination cost) ratio; a zero marginal cost counts as an
   infinite ratio and such candidates are ranked by coverage among
   themselves. Ties go to the lowest index. */
TeamResult greedy_ratio_graph(const ProblemInstance& inst);

/* Variant dispatcher for the three greedy rules above. */
TeamResult greedy_baseline(const ProblemInstance& inst);

/* Objective-agnostic baseline: the min(k_ref, n) experts most similar to the
   task by Jaccard similarity of skill sets. Ties go to the lowest index. */
TeamResult topk_jaccard(const ProblemInstance& inst, int k_ref);

/* |A inter B| / |A union B| over sorted index sets; 0 when both are empty. */
double jaccard_similarity(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace teamform
