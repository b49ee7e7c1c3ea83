#include "teamform/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace teamform {

SkillUniverse::SkillUniverse(std::vector<std::string> skill_names)
    : names(std::move(skill_names)) {
    for (int j = 0; j < static_cast<int>(names.size()); ++j) {
        if (names[j].empty()) fail("skill universe: empty skill name at position " + std::to_string(j));
        if (!index.emplace(names[j], j).second)
            fail("skill universe: duplicate skill name '" + names[j] + "'");
    }
}

int SkillUniverse::find(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

ExpertPool::ExpertPool(int num_skills, std::vector<std::vector<int>> expert_skills)
    : m(num_skills), experts(std::move(expert_skills)) {
    if (m < 0) fail("expert pool: negative skill count");
    membership.assign(static_cast<size_t>(experts.size()) * m, 0);
    for (int i = 0; i < static_cast<int>(experts.size()); ++i) {
        auto& skills = experts[i];
        std::sort(skills.begin(), skills.end());
        skills.erase(std::unique(skills.begin(), skills.end()), skills.end());
        for (int j : skills) {
            if (j < 0 || j >= m)
                fail("expert pool: expert " + std::to_string(i) + " has out-of-range skill index " +
                     std::to_string(j));
            membership[static_cast<size_t>(i) * m + j] = 1;
        }
    }
}

Task::Task(std::vector<int> skills, int num_skills) : required(std::move(skills)) {
    std::sort(required.begin(), required.end());
    required.erase(std::unique(required.begin(), required.end()), required.end());
    if (num_skills >= 0) {
        for (int j : required)
            if (j < 0 || j >= num_skills)
                fail("task: out-of-range skill index " + std::to_string(j));
    } else if (!required.empty() && required.front() < 0) {
        fail("task: negative skill index " + std::to_string(required.front()));
    }
}

int Assignment::team_size() const {
    int z = 0;
    for (uint8_t b : x) z += (b != 0);
    return z;
}

void CoordinationGraph::set(int i, int j, double d) {
    if (i < 0 || i >= n || j < 0 || j >= n)
        fail("coordination graph: index out of range");
    if (i == j) fail("coordination graph: diagonal must stay zero");
    if (!(d >= 0.0)) fail("coordination graph: negative or NaN distance");
    dist[static_cast<size_t>(i) * n + j] = d;
    dist[static_cast<size_t>(j) * n + i] = d;
}

void CoordinationGraph::validate() const {
    if (static_cast<size_t>(n) * n != dist.size())
        fail("coordination graph: storage does not match n");
    for (int i = 0; i < n; ++i) {
        if (at(i, i) != 0.0) fail("coordination graph: nonzero diagonal at " + std::to_string(i));
        for (int j = i + 1; j < n; ++j) {
            if (!(at(i, j) >= 0.0)) fail("coordination graph: negative or NaN distance");
            if (at(i, j) != at(j, i)) fail("coordination graph: asymmetric entry");
        }
    }
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::MaxKCover: return "maxk";
        case Variant::LinearCost: return "linear";
        case Variant::GraphCost: return "graph";
    }
    fail("unknown variant");
}

Variant variant_from_name(const std::string& name) {
    if (name == "maxk") return Variant::MaxKCover;
    if (name == "linear") return Variant::LinearCost;
    if (name == "graph") return Variant::GraphCost;
    fail("unknown variant '" + name + "' (expected maxk, linear or graph)");
}

void ProblemInstance::validate() const {
    if (universe.size() != 0 && universe.size() != pool.m)
        fail("instance: universe size does not match pool skill count");
    for (int j : task.required)
        if (j < 0 || j >= pool.m) fail("instance: task requires out-of-range skill");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("instance: lambda must be finite and > 0");
    switch (variant) {
        case Variant::MaxKCover:
            if (k < 0) fail("instance: k must be >= 0");
            break;
        case Variant::LinearCost:
            if (static_cast<int>(kappa.size()) != pool.size())
                fail("instance: kappa size does not match expert count");
            for (double c : kappa)
                if (!std::isfinite(c) || c < 0.0) fail("instance: kappa entries must be finite and >= 0");
            break;
        case Variant::GraphCost:
            if (graph.n != pool.size()) fail("instance: graph size does not match expert count");
            graph.validate();
            break;
    }
}

int coverage(const Task& task, const Assignment& x, const ExpertPool& pool) {
    if (x.size() != pool.size()) fail("coverage: assignment length does not match pool");
    int covered = 0;
    for (int j : task.required) {
        if (j < 0 || j >= pool.m) fail("coverage: task requires out-of-range skill");
        for (int i = 0; i < pool.size(); ++i) {
            if (x.x[i] && pool.has_skill(i, j)) {
                ++covered;
                break;
            }
        }
    }
    return covered;
}

double fractional_coverage(const Task& task, const Assignment& x, const ExpertPool& pool) {
    if (task.size() == 0) fail("fractional_coverage: task has no required skills");
    return static_cast<double>(coverage(task, x, pool)) / task.size();
}

double cost(const ProblemInstance& inst, const Assignment& x) {
    if (x.size() != inst.num_experts()) fail("cost: assignment length does not match pool");
    switch (inst.variant) {
        case Variant::MaxKCover:
            return x.team_size() <= inst.k ? 0.0 : kInfeasible;
        case Variant::LinearCost: {
            if (static_cast<int>(inst.kappa.size()) != inst.num_experts())
                fail("cost: kappa size does not match expert count");
            double total = 0.0;
            for (int i = 0; i < x.size(); ++i)
                if (x.x[i]) total += inst.kappa[i];
            return total;
        }
        case Variant::GraphCost: {
            if (inst.graph.n != inst.num_experts())
                fail("cost: graph size does not match expert count");
            double total = 0.0;
            for (int i = 0; i < x.size(); ++i) {
                if (!x.x[i]) continue;
                for (int j = i + 1; j < x.size(); ++j)
                    if (x.x[j]) total += inst.graph.at(i, j);
            }
            return total;
        }
    }
    fail("cost: unknown variant");
}

double objective(const ProblemInstance& inst, const Assignment& x) {
    double c = cost(inst, x);
    if (c == kInfeasible) return -kInfeasible;
    return inst.lambda * coverage(inst.task, x, inst.pool) - c;
}

std::vector<uint8_t> induced_skill_vector(const ProblemInstance& inst, const Assignment& x) {
    if (x.size() != inst.num_experts())
        fail("induced_skill_vector: assignment length does not match pool");
    std::vector<uint8_t> s(inst.num_skills(), 0);
    for (int j : inst.task.required) {
        for (int i = 0; i < inst.num_experts(); ++i) {
            if (x.x[i] && inst.pool.has_skill(i, j)) {
                s[j] = 1;
                break;
            }
        }
    }
    return s;
}

std::vector<int> sample_distinct(Rng& rng, int n, int count) {
    if (count > n) fail("sample_distinct: count exceeds population");
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < count; ++i)
        std::swap(idx[i], idx[i + uniform_int(rng, n - i)]);
    idx.resize(count);
    return idx;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace teamform
