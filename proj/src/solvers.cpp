#include "teamform/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace teamform {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/* yT Q y without the constant, recomputed from scratch. */
double raw_energy(const QuboMatrix& q, const std::vector<uint8_t>& y) {
    double e = 0.0;
    for (int i = 0; i < q.dim(); ++i) {
        if (!y[i]) continue;
        e += q.at(i, i);
        for (int j = i + 1; j < q.dim(); ++j)
            if (y[j]) e += 2.0 * q.at(i, j);
    }
    return e;
}

/* Energy change of flipping bit i of y: delta = (1 - 2 y_i)(Q_ii + 2 sum_{j != i} Q_ij y_j). */
double flip_delta(const QuboMatrix& q, const std::vector<uint8_t>& y, int i) {
    double s = q.at(i, i);
    const double* row = q.q.data() + static_cast<size_t>(i) * q.dim();
    for (int j = 0; j < q.dim(); ++j)
        if (y[j] && j != i) s += 2.0 * row[j];
    return y[i] ? -s : s;
}

SolveResult finish(const QuboMatrix& q, const ProblemInstance& inst, std::vector<uint8_t> y,
                   const char* name, Clock::time_point start) {
    SolveResult r;
    r.y = std::move(y);
    r.energy_value = energy(q, r.y);
    r.team = decode_and_repair(inst, r.y);
    r.objective_value = objective(inst, r.team);
    r.solver = name;
    r.wall_seconds = seconds_since(start);
    return r;
}

}  // namespace

SolveResult solve_exact(const QuboMatrix& qubo, const ProblemInstance& inst, int max_dim) {
    auto start = Clock::now();
    const int dim = qubo.dim();
    if (dim > max_dim)
        fail("solve_exact: dimension " + std::to_string(dim) + " exceeds the cap " +
             std::to_string(max_dim));
    if (dim != inst.num_skills() + inst.num_experts())
        fail("solve_exact: qubo and instance dimensions disagree");

    std::vector<uint8_t> y(dim, 0), best = y;
    double cur = 0.0;        /* incrementally tracked yT Q y */
    double best_exact = 0.0; /* exactly recomputed at every improvement */

    const uint64_t total = uint64_t{1} << dim;
    for (uint64_t count = 1; count < total; ++count) {
        /* Binary increment with y[0] as the most significant bit: flipping
           trailing ones keeps the scan in lexicographic vector order. */
        int i = dim - 1;
        for (;; --i) {
            cur += flip_delta(qubo, y, i);
            y[i] ^= 1;
            if (y[i]) break;
        }
        double guard = 1e-9 * (1.0 + std::fabs(best_exact));
        if (cur < best_exact + guard) {
            double exact = raw_energy(qubo, y);
            cur = exact; /* resync accumulated drift */
            if (exact < best_exact) {
                best_exact = exact;
                best = y;
            }
        }
    }
    return finish(qubo, inst, std::move(best), "exact", start);
}

TeamResult solve_exact_over_x(const ProblemInstance& inst, int max_n) {
    inst.validate();
    const int n = inst.num_experts();
    if (n > max_n)
        fail("solve_exact_over_x: " + std::to_string(n) + " experts exceed the cap " +
             std::to_string(max_n));

    TeamResult best;
    best.x = Assignment(n);
    best.objective_value = objective(inst, best.x);
    best.solver = "exact";

    Assignment x(n);
    for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
        for (int i = 0; i < n; ++i) x.x[i] = (mask >> i) & 1;
        double f = objective(inst, x);
        if (f > best.objective_value ||
            (f == best.objective_value && x.x < best.x.x)) {
            best.objective_value = f;
            best.x = x;
        }
    }
    return best;
}

bool metropolis_accept(double delta_e, double temp, double u) {
    if (delta_e <= 0.0) return true;
    if (temp <= 0.0) return false;
    return u < std::exp(-delta_e / temp);
}

SolveResult solve_anneal(const QuboMatrix& qubo, const ProblemInstance& inst,
                         const AnnealSchedule& schedule) {
    auto start = Clock::now();
    const int dim = qubo.dim();
    if (dim != inst.num_skills() + inst.num_experts())
        fail("solve_anneal: qubo and instance dimensions disagree");
    if (!(schedule.t_initial >= schedule.t_final) || !(schedule.t_final > 0.0))
        fail("solve_anneal: need t_initial >= t_final > 0");
    if (schedule.sweeps < 1 || schedule.restarts < 1)
        fail("solve_anneal: sweeps and restarts must be >= 1");

    const double ratio =
        schedule.sweeps > 1
            ? std::pow(schedule.t_final / schedule.t_initial, 1.0 / (schedule.sweeps - 1))
            : 1.0;

    std::vector<uint8_t> best_overall;
    double best_overall_e = 0.0;

    /* Local field f_i = 2 sum_{j != i} Q_ij y_j, updated on accepted flips. */
    std::vector<double> field(dim);
    for (int restart = 0; restart < schedule.restarts; ++restart) {
        Rng rng(schedule.seed + static_cast<uint64_t>(restart));
        std::vector<uint8_t> y(dim);
        for (auto& b : y) b = static_cast<uint8_t>(rng() & 1);

        std::fill(field.begin(), field.end(), 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (y[j] && j != i) field[i] += 2.0 * qubo.at(i, j);

        double cur = raw_energy(qubo, y);
        std::vector<uint8_t> best = y;
        double best_e = cur;

        double temp = schedule.t_initial;
        for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
            for (int i = 0; i < dim; ++i) {
                double delta = y[i] ? -(qubo.at(i, i) + field[i]) : (qubo.at(i, i) + field[i]);
                bool accept = delta <= 0.0 || metropolis_accept(delta, temp, uniform01(rng));
                if (!accept) continue;
                double sign = y[i] ? -2.0 : 2.0;
                y[i] ^= 1;
                cur += delta;
                for (int j = 0; j < dim; ++j)
                    if (j != i) field[j] += sign * qubo.at(i, j);
                if (cur < best_e) {
                    best_e = cur;
                    best = y;
                }
            }
            temp *= ratio;
        }

        double exact = raw_energy(qubo, best); /* clear accumulated drift */
        if (restart == 0 || exact < best_overall_e) {
            best_overall_e = exact;
            best_overall = best;
        }
    }
    return finish(qubo, inst, std::move(best_overall), "anneal", start);
}

double relaxed_loss(const QuboMatrix& qubo, const std::vector<double>& pi, double alpha) {
    const int dim = qubo.dim();
    if (static_cast<int>(pi.size()) != dim) fail("relaxed_loss: pi length mismatch");
    double loss = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double* row = qubo.q.data() + static_cast<size_t>(i) * dim;
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += row[j] * pi[j];
        loss += pi[i] * acc + alpha * pi[i] * (1.0 - pi[i]);
    }
    return loss;
}

std::vector<double> relaxed_gradient(const QuboMatrix& qubo, const std::vector<double>& pi,
                                     double alpha) {
    const int dim = qubo.dim();
    if (static_cast<int>(pi.size()) != dim) fail("relaxed_gradient: pi length mismatch");
    std::vector<double> grad(dim);
    for (int i = 0; i < dim; ++i) {
        const double* row = qubo.q.data() + static_cast<size_t>(i) * dim;
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += row[j] * pi[j];
        grad[i] = 2.0 * acc + alpha * (1.0 - 2.0 * pi[i]);
    }
    return grad;
}

SolveResult solve_relaxed(const QuboMatrix& qubo, const ProblemInstance& inst,
                          const RelaxedOptions& opts) {
    auto start = Clock::now();
    const int dim = qubo.dim();
    if (dim != inst.num_skills() + inst.num_experts())
        fail("solve_relaxed: qubo and instance dimensions disagree");
    if (opts.max_iters < 1 || !(opts.step > 0.0)) fail("solve_relaxed: bad options");

    Rng rng(opts.seed);
    std::vector<double> pi(dim);
    for (auto& p : pi) p = uniform01(rng);

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        std::vector<double> grad = relaxed_gradient(qubo, pi, opts.alpha);
        double moved = 0.0;
        for (int i = 0; i < dim; ++i) {
            double next = std::clamp(pi[i] - opts.step * grad[i], 0.0, 1.0);
            moved = std::max(moved, std::fabs(next - pi[i]));
            pi[i] = next;
        }
        if (!std::isfinite(relaxed_loss(qubo, pi, opts.alpha)))
            fail("solve_relaxed: loss diverged at iteration " + std::to_string(iter) +
                 " (reduce the step size)");
        if (moved < 1e-12) break;
    }

    std::vector<uint8_t> y(dim);
    for (int i = 0; i < dim; ++i) y[i] = pi[i] >= 0.5 ? 1 : 0;
    return finish(qubo, inst, std::move(y), "relaxed", start);
}

}  // namespace teamform
