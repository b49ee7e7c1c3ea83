#pragma once

#include <string>
#include <vector>

#include "teamform/core_model.hpp"

/*
 * QUBO encoding of the team-formation objective.
 *
 * Decision vector y = (s, x): the first m entries are skill indicators, the
 * last n entries are expert selections. Maximizing F(x) is recast as
 * minimizing E(y) = yT Q y + constant over binary y with symmetric Q.
 *
 * Inequalities h(y) >= 0 enter through unbalanced penalization: each
 * constraint adds -p1 h + p2 h^2, which is zero at h = 0, grows quadratically
 * for violations (h < 0), and mildly rewards slack. Writing h = hvec . y + h0,
 * the squares are materialized as the full symmetric outer product
 * p2 hvec hvecT (both orientations of each off-diagonal pair are counted by
 * the quadratic form), so that for every binary y
 *
 *     yT (-P1 + P2) y + stored constants == sum_j (-p1 h_j + p2 h_j^2)
 *
 * holds exactly, not just up to convention.
 *
 * Constraint families:
 *   coverage      h_j(y) = sum_i E(i,j) x_i - s_j >= 0     (one per skill)
 *   cardinality   h_k(y) = k - sum_i x_i >= 0              (MaxKCover only)
 *
 * The cardinality expansion leaves a y-free remainder p2 k^2 - p1 k, stored
 * in QuboMatrix::constant so reported energies stay comparable.
 */

namespace teamform {

struct PenaltyParams {
    double p1 = 1.0;
    double p2 = 10.0;
};

struct QuboMatrix {
    int m = 0;
    int n = 0;
    Variant variant = Variant::MaxKCover;
    std::vector<double> q;  /* (m+n)^2 row-major, symmetric */
    double constant = 0.0;

    QuboMatrix() = default;
    QuboMatrix(int num_skills, int num_experts, Variant v)
        : m(num_skills),
          n(num_experts),
          variant(v),
          q(static_cast<size_t>(num_skills + num_experts) * (num_skills + num_experts), 0.0) {}

    int dim() const { return m + n; }
    double& at(int i, int j) { return q[static_cast<size_t>(i) * dim() + j]; }
    double at(int i, int j) const { return q[static_cast<size_t>(i) * dim() + j]; }
};

/* Linear objective coefficients over y: lambda on required-skill slots, zero
   elsewhere; LinearCost additionally sets c_{m+i} = -kappa_i. */
std::vector<double> build_c_vector(const ProblemInstance& inst);

struct CoveragePenalties {
    Matrix p1; /* diagonal part: sum_j p1 * diag(hvec_j) */
    Matrix p2; /* quadratic part: sum_j p2 * hvec_j hvec_jT */
};

/* Coverage-constraint penalty matrices. By default one constraint per skill
   in the universe; `required_only` prunes to the task's skills (the pruned
   slots then have no constraint and zero objective weight, so they stay
   irrelevant to the optimum). */
CoveragePenalties build_coverage_penalties(const ProblemInstance& inst, const PenaltyParams& params,
                                           bool required_only = false);

struct CardinalityPenalty {
    Matrix matrix;       /* expert-block: p2 * ones + (p1 - 2 k p2) * diag */
    double constant = 0; /* y-free remainder p2 k^2 - p1 k */
};

/* Team-size penalty for MaxKCover's z <= k bound. */
CardinalityPenalty build_cardinality_penalty(const ProblemInstance& inst, const PenaltyParams& params);

/* GraphCost objective matrix: yT Dhat y == lambda * sum_{j in J} s_j -
   sum_{selected unordered pairs} d(i,j) for every binary y. Off-diagonal
   distances are halved because the symmetric form visits each pair twice. */
Matrix build_graph_objective_matrix(const ProblemInstance& inst);

/* Assemble the full QUBO for the instance's variant:
     MaxKCover   Q = -diag(c) + P_k - P1 + P2   (constant = p2 k^2 - p1 k)
     LinearCost  Q = -diag(c)       - P1 + P2
     GraphCost   Q = -Dhat          - P1 + P2            */
QuboMatrix build_q(const ProblemInstance& inst, const PenaltyParams& params,
                   bool required_only = false);

/* E(y) = yT Q y + constant; y must be binary and of length dim. */
double energy(const QuboMatrix& qubo, const std::vector<uint8_t>& y);

/* Keep the expert block of y as the team and drop the skill block; the skill
   side is recomputed optimally (induced_skill_vector) wherever F is needed,
   so inconsistent skill bits in y cannot corrupt reported objectives. */
Assignment decode_and_repair(const ProblemInstance& inst, const std::vector<uint8_t>& y);

/* Text format: header "m n variant", one matrix row per line, then a final
   "constant <value>" line. Values use 17 significant digits so a round trip
   reproduces the exact doubles. */
void save_qubo(const QuboMatrix& qubo, const std::string& path);
QuboMatrix load_qubo(const std::string& path);

}  // namespace teamform
