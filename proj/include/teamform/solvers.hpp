#pragma once

#include <string>
#include <vector>

#include "teamform/core_model.hpp"
#include "teamform/qubo.hpp"

namespace teamform {

/* Geometric cooling schedule for the annealer. The temperature decays from
   t_initial to t_final over `sweeps` full passes; `restarts` independent
   runs (seeded seed, seed+1, ...) keep the best final state. */
struct AnnealSchedule {
    double t_initial = 10.0;
    double t_final = 1e-3;
    int sweeps = 2000;
    int restarts = 1;
    uint64_t seed = 0;
};

/* A solver's answer on one QUBO: the raw binary vector, its exact energy,
   and the decoded team with its objective value after repair. */
struct SolveResult {
    std::vector<uint8_t> y;
    double energy_value = 0.0;
    Assignment team;
    double objective_value = 0.0;
    double wall_seconds = 0.0;
    std::string solver;
};

/* A baseline-style answer that never touches the QUBO encoding. */
struct TeamResult {
    Assignment x;
    double objective_value = 0.0;
    std::string solver;
};

/* Exhaustive minimization of yT Q y + c over all binary vectors, in
   lexicographic order (y[0] is the most significant position), keeping the
   first optimum so ties resolve to the lexicographically smallest vector.
   Incremental single-flip deltas drive the scan; candidate improvements are
   re-evaluated exactly so float drift cannot change the winner. Refuses
   dimensions above `max_dim` (the scan is O(2^dim)). */
SolveResult solve_exact(const QuboMatrix& qubo, const ProblemInstance& inst, int max_dim = 26);

/* Exhaustive maximization of F over all 2^n teams, bypassing the QUBO; the
   ground-truth reference for experiments. Ties resolve to the
   lexicographically smallest team. */
TeamResult solve_exact_over_x(const ProblemInstance& inst, int max_n = 22);

/* Single-flip Metropolis annealing under the geometric schedule. Fully
   deterministic for a given schedule (seed included). */
SolveResult solve_anneal(const QuboMatrix& qubo, const ProblemInstance& inst,
                         const AnnealSchedule& schedule);

/* The Metropolis acceptance rule, exposed for direct testing: accept when
   delta <= 0, otherwise when u < exp(-delta / temp). */
bool metropolis_accept(double delta_e, double temp, double u);

struct RelaxedOptions {
    double alpha = 1.0;     /* binary regularizer weight */
    double step = 1e-3;     /* gradient-descent step size */
    int max_iters = 2000;
    uint64_t seed = 0;
};

/* Continuous relaxation: minimize piT Q pi + alpha * sum pi (1 - pi) over
   [0,1]^dim by projected gradient descent from a seeded uniform start, then
   round at 0.5 and decode. A sanity baseline for the learned relaxation. */
SolveResult solve_relaxed(const QuboMatrix& qubo, const ProblemInstance& inst,
                          const RelaxedOptions& opts);

/* L(pi) = piT Q pi + alpha * sum_i pi_i (1 - pi_i); the QUBO constant is
   deliberately excluded (it cannot influence any minimizer). */
double relaxed_loss(const QuboMatrix& qubo, const std::vector<double>& pi, double alpha);

/* d L / d pi = 2 Q pi + alpha (1 - 2 pi). */
std::vector<double> relaxed_gradient(const QuboMatrix& qubo, const std::vector<double>& pi,
                                     double alpha);

}  // namespace teamform
