#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "teamform/common.hpp"

/*
 * Domain model for skill-based team formation.
 *
 * A task J is a set of required skills drawn from an ordered universe of m
 * skills. Each expert i owns a skill set X_i. A team is a binary selection
 * vector x over the n experts; its value is
 *
 *     F(x) = lambda * Cov(J | x) - Cost(x)
 *
 * where Cov counts the required skills covered by the union of the selected
 * experts' skills and Cost depends on the variant:
 *
 *     MaxKCover  - 0 while the team size z is <= k, infeasible beyond;
 *     LinearCost - sum of per-expert hiring costs kappa_i;
 *     GraphCost  - sum of pairwise coordination distances d(i,j) over the
 *                  selected team, each unordered pair counted once.
 *
 * Infeasibility uses the IEEE infinity sentinel, so comparisons stay exact
 * (no "large float" approximations).
 */

namespace teamform {

/* Ordered skill identifiers; position in `names` is the skill index used by
   every vector in the library and the first m slots of the QUBO layout. */
struct SkillUniverse {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;

    SkillUniverse() = default;
    explicit SkillUniverse(std::vector<std::string> skill_names);

    int size() const { return static_cast<int>(names.size()); }
    /* Index of `name`, or -1 if the universe does not contain it. */
    int find(const std::string& name) const;
};

/* The n experts and their skills, kept both as sorted index sets and as a
   dense n x m 0/1 membership matrix (rows are experts). */
struct ExpertPool {
    int m = 0;
    std::vector<std::vector<int>> experts;
    std::vector<uint8_t> membership;

    ExpertPool() = default;
    ExpertPool(int num_skills, std::vector<std::vector<int>> expert_skills);

    int size() const { return static_cast<int>(experts.size()); }
    bool has_skill(int expert, int skill) const {
        return membership[static_cast<size_t>(expert) * m + skill] != 0;
    }
};

/* One task: the sorted set of required skill indices. */
struct Task {
    std::vector<int> required;

    Task() = default;
    /* Sorts and deduplicates; validates the index range when m >= 0. */
    explicit Task(std::vector<int> skills, int num_skills = -1);

    int size() const { return static_cast<int>(required.size()); }
};

/* Binary expert-selection vector; x[i] == 1 hires expert i. */
struct Assignment {
    std::vector<uint8_t> x;

    Assignment() = default;
    explicit Assignment(int n) : x(n, 0) {}
    explicit Assignment(std::vector<uint8_t> sel) : x(std::move(sel)) {}

    int size() const { return static_cast<int>(x.size()); }
    int team_size() const;
};

/* Symmetric nonnegative pairwise distances with a zero diagonal. */
struct CoordinationGraph {
    int n = 0;
    std::vector<double> dist;  /* n x n, row-major */

    CoordinationGraph() = default;
    explicit CoordinationGraph(int num_experts)
        : n(num_experts), dist(static_cast<size_t>(num_experts) * num_experts, 0.0) {}

    double at(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
    /* Sets both (i, j) and (j, i); rejects negative distances and diagonal writes. */
    void set(int i, int j, double d);
    /* Checks symmetry, zero diagonal and nonnegativity. */
    void validate() const;
};

enum class Variant { MaxKCover, LinearCost, GraphCost };

/* Short names used by file formats and the CLI: maxk / linear / graph. */
const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

/* One optimization problem: pool + task + cost variant and its data. */
struct ProblemInstance {
    SkillUniverse universe;
    ExpertPool pool;
    Task task;
    Variant variant = Variant::MaxKCover;
    double lambda = 50.0;        /* coverage weight */
    int k = 3;                   /* MaxKCover: team-size bound */
    std::vector<double> kappa;   /* LinearCost: per-expert hiring cost */
    CoordinationGraph graph;     /* GraphCost: pairwise distances */

    int num_skills() const { return pool.m; }
    int num_experts() const { return pool.size(); }
    /* Dimension and variant-data checks; throws Error on violation. */
    void validate() const;
};

/* Number of required skills of `task` covered by the selected experts. */
int coverage(const Task& task, const Assignment& x, const ExpertPool& pool);

/* coverage / |J|; requires a nonempty task. */
double fractional_coverage(const Task& task, const Assignment& x, const ExpertPool& pool);

/* Variant cost of the team; +infinity when MaxKCover's size bound is broken. */
double cost(const ProblemInstance& inst, const Assignment& x);

/* F(x) = lambda * coverage - cost; -infinity when the cost is infeasible. */
double objective(const ProblemInstance& inst, const Assignment& x);

/* The optimal skill block for x: s_j = 1 iff j is required and covered.
   Among all s consistent with the coverage constraints this maximizes the
   QUBO-side objective, so F(x) can be read off a (s, x) concatenation. */
std::vector<uint8_t> induced_skill_vector(const ProblemInstance& inst, const Assignment& x);

}  // namespace teamform
