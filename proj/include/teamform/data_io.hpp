#pragma once

// Dataset plumbing: a line-oriented text format for instances, coordination
// graph builders, and a seeded synthetic generator.
//
// File format (whitespace-separated, '#' starts a comment):
//   skills: s0 s1 ...            one line, defines the ordered universe
//   expert <id>: <skill> ...     one per expert, order defines the index
//   expert_cost <id> <real>      optional; all experts or none
//   task <id>: <skill> ...       one per task
//   edge <id_a> <id_b> <real>    optional coordination distances
//
// The env var TEAMFORM_DATA_DIR supplies a fallback root for relative paths.

#include <cstdint>
#include <string>
#include <vector>

#include "teamform/core_model.hpp"

namespace teamform {

struct Dataset {
    SkillUniverse universe;
    ExpertPool pool;
    std::vector<std::string> expert_ids;
    std::vector<Task> tasks;
    std::vector<std::string> task_ids;
    std::vector<double> expert_costs; // empty, or one entry per expert
    bool has_graph = false;
    CoordinationGraph graph;
};

// Looks for `path` as given, then under $TEAMFORM_DATA_DIR. Returns the first
// location that exists, or the original path (so the caller's open fails with
// a sensible message).
std::string resolve_data_path(const std::string& path);

Dataset load_dataset(const std::string& path);
void save_dataset(const std::string& path, const Dataset& data);

// Complete graph of Jaccard distances 1 - |Xi ∩ Xj| / |Xi ∪ Xj| between
// expert skill sets. Two empty skill sets get distance 0.
CoordinationGraph build_jaccard_graph(const ExpertPool& pool);

// Collaboration-count graph: pairs that collaborated at least min_common
// times get an edge of distance e^{-f * count}; everyone else gets
// non_edge_distance. The default 0 means coordination cost applies only to
// pairs with a shared history — the usual convention for sparse
// collaboration networks, where an absent edge is simply no cost term.
CoordinationGraph build_collab_graph(const std::vector<std::vector<int>>& collab_counts,
                                     double f = 0.1, int min_common = 1,
                                     double non_edge_distance = 0.0);

enum class GraphKind { JaccardComplete, CollabExpDecay };

struct DatasetSpec {
    int n_experts = 0;
    int n_tasks = 0;
    int n_skills = 0;
    double mean_skills_per_expert = 2.0;
    double mean_skills_per_task = 4.0;
    GraphKind graph_kind = GraphKind::CollabExpDecay;
    double collab_f = 0.1;      // decay rate for collab graphs
    int collab_min_common = 1;
    double collab_degree = 4.5; // target mean collaborators per expert
    double cost_min = 0.5;   // per-expert hiring costs ~ U[cost_min, cost_max]
    double cost_max = 20.0;
    uint64_t seed = 0;

    void validate() const;
};

// Draws `count` tasks whose sizes follow 1 + Poisson(mean_skills - 1),
// clamped to [1, n_skills]. Shared by the generator and held-out task draws.
std::vector<Task> generate_tasks(int count, int n_skills, double mean_skills, Rng& rng);

// Seeded synthetic dataset matching the spec's summary statistics: skill
// counts are redrawn (with derived seeds, up to 64 attempts) until the
// empirical means land within 10% of the targets. Skills are named s0..,
// experts e0.., tasks t0..; costs and a coordination graph are always
// filled. The default graph is a sparse collaboration network (mean degree
// collab_degree, weights e^{-f * count}, strangers cost nothing), matching
// the texture of real collaboration benchmarks; JaccardComplete instead
// connects every pair at their skill-set Jaccard distance.
Dataset generate_synthetic(const DatasetSpec& spec);

// Assembles a solvable instance from one task of a dataset, attaching the
// variant-specific data (costs or graph) and failing if the dataset lacks it.
ProblemInstance make_instance(const Dataset& data, int task_index, Variant variant,
                              double lambda = 50.0, int k = 3);

} // namespace teamform
