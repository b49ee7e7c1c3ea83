#pragma once

#include <set>
#include <vector>

#include "teamform/core_model.hpp"
#include "teamform/qubo.hpp"

/* Shared helpers for the unit tests: small random problem builders and
   independent brute-force oracles the library code never touches. */

namespace testutil {

using namespace teamform;

inline ProblemInstance random_instance(Rng& rng, Variant v, int n, int m, double lambda = 50.0,
                                       int k = 2) {
    std::vector<std::vector<int>> experts(n);
    for (auto& sk : experts) {
        int cnt = 1 + uniform_int(rng, std::min(3, m));
        sk = sample_distinct(rng, m, cnt);
    }
    ProblemInstance inst;
    inst.pool = ExpertPool(m, std::move(experts));
    inst.task = Task(sample_distinct(rng, m, 1 + uniform_int(rng, std::min(4, m))), m);
    inst.variant = v;
    inst.lambda = lambda;
    inst.k = k;
    if (v == Variant::LinearCost) {
        inst.kappa.resize(n);
        for (double& c : inst.kappa) c = uniform_range(rng, 0.5, 20.0);
    }
    if (v == Variant::GraphCost) {
        inst.graph = CoordinationGraph(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inst.graph.set(i, j, uniform01(rng));
    }
    return inst;
}

inline Assignment team(std::initializer_list<int> bits) {
    std::vector<uint8_t> v;
    for (int b : bits) v.push_back(static_cast<uint8_t>(b));
    return Assignment(v);
}

inline Assignment random_assignment(Rng& rng, int n) {
    Assignment x(n);
    for (auto& b : x.x) b = static_cast<uint8_t>(rng() & 1);
    return x;
}

inline std::vector<uint8_t> random_bits(Rng& rng, int len) {
    std::vector<uint8_t> y(len);
    for (auto& b : y) b = static_cast<uint8_t>(rng() & 1);
    return y;
}

/* Oracle: coverage as an explicit set union. */
inline int coverage_oracle(const Task& task, const Assignment& x, const ExpertPool& pool) {
    std::set<int> got;
    for (int i = 0; i < pool.size(); ++i)
        if (x.x[i])
            for (int j : pool.experts[i]) got.insert(j);
    int covered = 0;
    for (int j : task.required) covered += got.count(j) ? 1 : 0;
    return covered;
}

/* Oracle: E(y) = sum_ij Q_ij y_i y_j + constant by the naive double loop. */
inline double energy_oracle(const QuboMatrix& q, const std::vector<uint8_t>& y) {
    double e = q.constant;
    for (int i = 0; i < q.dim(); ++i)
        for (int j = 0; j < q.dim(); ++j) e += q.at(i, j) * y[i] * y[j];
    return e;
}

/* Oracle: total penalty slack sum_j (-p1 h_j + p2 h_j^2) evaluated from the
   constraint definitions, including the cardinality constraint for MaxKCover. */
inline double slack_oracle(const ProblemInstance& inst, const PenaltyParams& p,
                           const std::vector<uint8_t>& y, bool required_only = false) {
    const int m = inst.num_skills(), n = inst.num_experts();
    double acc = 0.0;
    std::vector<int> skills;
    if (required_only)
        skills = inst.task.required;
    else
        for (int j = 0; j < m; ++j) skills.push_back(j);
    for (int j : skills) {
        double h = -static_cast<double>(y[j]);
        for (int i = 0; i < n; ++i)
            if (inst.pool.has_skill(i, j)) h += y[m + i];
        acc += -p.p1 * h + p.p2 * h * h;
    }
    if (inst.variant == Variant::MaxKCover) {
        double h = inst.k;
        for (int i = 0; i < n; ++i) h -= y[m + i];
        acc += -p.p1 * h + p.p2 * h * h;
    }
    return acc;
}

/* Oracle: exhaustive maximum of F over all 2^n teams (n small). */
inline double best_objective_oracle(const ProblemInstance& inst) {
    const int n = inst.num_experts();
    double best = -kInfeasible;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        Assignment x(n);
        for (int i = 0; i < n; ++i) x.x[i] = (mask >> i) & 1;
        best = std::max(best, objective(inst, x));
    }
    return best;
}

}  // namespace testutil
