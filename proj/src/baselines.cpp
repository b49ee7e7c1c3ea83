#include "teamform/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace teamform {

namespace {

/* Marginal coverage of adding expert i to the team implied by `covered`. */
int marginal_coverage(const ProblemInstance& inst, const std::vector<uint8_t>& covered, int i) {
    int gain = 0;
    for (int j : inst.task.required)
        if (!covered[j] && inst.pool.has_skill(i, j)) ++gain;
    return gain;
}

void absorb(const ProblemInstance& inst, std::vector<uint8_t>& covered, int i) {
    for (int j : inst.task.required)
        if (inst.pool.has_skill(i, j)) covered[j] = 1;
}

TeamResult finish(const ProblemInstance& inst, Assignment x, const char* name) {
    TeamResult r;
    r.x = std::move(x);
    r.objective_value = objective(inst, r.x);
    r.solver = name;
    return r;
}

}  // namespace

TeamResult greedy_max_k_cover(const ProblemInstance& inst) {
    inst.validate();
    if (inst.variant != Variant::MaxKCover) fail("greedy_max_k_cover: wrong variant");
    const int n = inst.num_experts();
    Assignment x(n);
    std::vector<uint8_t> covered(inst.num_skills(), 0);
    for (int round = 0; round < inst.k; ++round) {
        int best = -1, best_gain = 0;
        for (int i = 0; i < n; ++i) {
            if (x.x[i]) continue;
            int gain = marginal_coverage(inst, covered, i);
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best < 0) break; /* nothing adds coverage */
        x.x[best] = 1;
        absorb(inst, covered, best);
    }
    return finish(inst, std::move(x), "greedy");
}

TeamResult greedy_cost_scaled(const ProblemInstance& inst, double scale) {
    inst.validate();
    if (inst.variant != Variant::LinearCost) fail("greedy_cost_scaled: wrong variant");
    const int n = inst.num_experts();
    Assignment x(n);
    std::vector<uint8_t> covered(inst.num_skills(), 0);
    for (;;) {
        int best = -1;
        double best_score = 0.0; /* strict positivity: scores <= 0 never selected */
        for (int i = 0; i < n; ++i) {
            if (x.x[i]) continue;
            double score = inst.lambda * marginal_coverage(inst, covered, i) - scale * inst.kappa[i];
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best < 0) break;
        x.x[best] = 1;
        absorb(inst, covered, best);
    }
    return finish(inst, std::move(x), "greedy");
}

TeamResult greedy_ratio_graph(const ProblemInstance& inst) {
    inst.validate();
    if (inst.variant != Variant::GraphCost) fail("greedy_ratio_graph: wrong variant");
    const int n = inst.num_experts();
    Assignment x(n);
    std::vector<uint8_t> covered(inst.num_skills(), 0);
    for (;;) {
        int best = -1, best_gain = 0;
        double best_ratio = 0.0;
        bool best_free = false;
        for (int i = 0; i < n; ++i) {
            if (x.x[i]) continue;
            int gain = marginal_coverage(inst, covered, i);
            double coord = 0.0;
            for (int j2 = 0; j2 < n; ++j2)
                if (x.x[j2]) coord += inst.graph.at(i, j2);
            if (inst.lambda * gain - coord <= 0.0) continue; /* would not improve F */
            bool free_cand = coord == 0.0;
            bool wins;
            if (free_cand && best_free)
                wins = gain > best_gain; /* both infinite ratio: more coverage */
            else if (free_cand != best_free)
                wins = free_cand; /* infinite ratio beats any finite one */
            else
                wins = static_cast<double>(gain) / coord > best_ratio;
            if (best < 0 || wins) {
                best = i;
                best_gain = gain;
                best_free = free_cand;
                best_ratio = free_cand ? 0.0 : static_cast<double>(gain) / coord;
            }
        }
        if (best < 0) break;
        x.x[best] = 1;
        absorb(inst, covered, best);
    }
    return finish(inst, std::move(x), "greedy");
}

TeamResult greedy_baseline(const ProblemInstance& inst) {
    switch (inst.variant) {
        case Variant::MaxKCover: return greedy_max_k_cover(inst);
        case Variant::LinearCost: return greedy_cost_scaled(inst);
        case Variant::GraphCost: return greedy_ratio_graph(inst);
    }
    fail("greedy_baseline: unknown variant");
}

double jaccard_similarity(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::vector<int> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    return static_cast<double>(inter.size()) / uni.size();
}

TeamResult topk_jaccard(const ProblemInstance& inst, int k_ref) {
    inst.validate();
    if (k_ref < 0) fail("topk_jaccard: k_ref must be >= 0");
    const int n = inst.num_experts();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> sim(n);
    for (int i = 0; i < n; ++i) sim[i] = jaccard_similarity(inst.pool.experts[i], inst.task.required);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sim[a] > sim[b]; }); /* ties keep lowest index */
    Assignment x(n);
    for (int r = 0; r < std::min(k_ref, n); ++r) x.x[order[r]] = 1;
    return finish(inst, std::move(x), "topk");
}

}  // namespace teamform
