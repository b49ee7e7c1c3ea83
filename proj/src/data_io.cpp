#include "teamform/data_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace teamform {

std::string resolve_data_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    const char* root = std::getenv("TEAMFORM_DATA_DIR");
    if (root != nullptr && *root != '\0') {
        fs::path candidate = fs::path(root) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

namespace {

[[noreturn]] void fail_at(const std::string& path, int line_no, const std::string& what) {
    fail(path + " line " + std::to_string(line_no) + ": " + what);
}

std::string strip_comment(const std::string& line) {
    size_t hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

/* Splits "  <id> : tail" / "<id>: tail" into the id and the tail words. */
std::string take_id(const std::string& path, int line_no, const std::string& rest,
                    std::vector<std::string>* tail_words) {
    size_t colon = rest.find(':');
    if (colon == std::string::npos) fail_at(path, line_no, "expected '<id>:' after keyword");
    std::vector<std::string> id_words = split_words(rest.substr(0, colon));
    if (id_words.size() != 1) fail_at(path, line_no, "expected exactly one identifier before ':'");
    *tail_words = split_words(rest.substr(colon + 1));
    return id_words[0];
}

double parse_real(const std::string& path, int line_no, const std::string& word) {
    try {
        size_t used = 0;
        double v = std::stod(word, &used);
        if (used != word.size()) fail_at(path, line_no, "bad number '" + word + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail_at(path, line_no, "bad number '" + word + "'");
    }
}

} // namespace

Dataset load_dataset(const std::string& path) {
    std::string resolved = resolve_data_path(path);
    std::ifstream in(resolved);
    if (!in) fail("cannot open dataset file: " + resolved);

    std::vector<std::string> skill_names;
    bool saw_skills = false;
    std::vector<std::string> expert_ids;
    std::map<std::string, int> expert_index;
    std::vector<std::vector<int>> expert_skills;
    std::vector<std::string> task_ids;
    std::set<std::string> task_seen;
    std::vector<std::vector<int>> task_skills;
    std::map<std::string, double> costs;
    std::vector<std::tuple<int, std::string, std::string, double>> edges; // line, a, b, w

    auto skill_of = [&](const std::string& name, int line_no) {
        if (!saw_skills) fail_at(resolved, line_no, "'skills:' line must come first");
        auto it = std::find(skill_names.begin(), skill_names.end(), name);
        if (it == skill_names.end()) fail_at(resolved, line_no, "unknown skill '" + name + "'");
        return static_cast<int>(it - skill_names.begin());
    };

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword)) continue; // blank or comment-only line
        std::string rest;
        std::getline(ls, rest);

        if (keyword == "skills:") {
            if (saw_skills) fail_at(resolved, line_no, "duplicate 'skills:' line");
            saw_skills = true;
            for (const std::string& name : split_words(rest)) {
                if (std::find(skill_names.begin(), skill_names.end(), name) != skill_names.end())
                    fail_at(resolved, line_no, "duplicate skill '" + name + "'");
                skill_names.push_back(name);
            }
            if (skill_names.empty()) fail_at(resolved, line_no, "empty skill universe");
        } else if (keyword == "expert") {
            std::vector<std::string> names;
            std::string id = take_id(resolved, line_no, rest, &names);
            if (expert_index.count(id)) fail_at(resolved, line_no, "duplicate expert '" + id + "'");
            expert_index[id] = static_cast<int>(expert_ids.size());
            expert_ids.push_back(id);
            std::vector<int> skills;
            for (const std::string& name : names) skills.push_back(skill_of(name, line_no));
            expert_skills.push_back(std::move(skills));
        } else if (keyword == "expert_cost") {
            std::vector<std::string> words = split_words(rest);
            if (words.size() != 2) fail_at(resolved, line_no, "expected 'expert_cost <id> <real>'");
            if (!expert_index.count(words[0]))
                fail_at(resolved, line_no, "unknown expert '" + words[0] + "'");
            if (costs.count(words[0]))
                fail_at(resolved, line_no, "duplicate cost for expert '" + words[0] + "'");
            double v = parse_real(resolved, line_no, words[1]);
            if (!std::isfinite(v) || v < 0) fail_at(resolved, line_no, "cost must be finite and >= 0");
            costs[words[0]] = v;
        } else if (keyword == "task") {
            std::vector<std::string> names;
            std::string id = take_id(resolved, line_no, rest, &names);
            if (!task_seen.insert(id).second) fail_at(resolved, line_no, "duplicate task '" + id + "'");
            task_ids.push_back(id);
            std::vector<int> skills;
            for (const std::string& name : names) skills.push_back(skill_of(name, line_no));
            task_skills.push_back(std::move(skills));
        } else if (keyword == "edge") {
            std::vector<std::string> words = split_words(rest);
            if (words.size() != 3) fail_at(resolved, line_no, "expected 'edge <id_a> <id_b> <real>'");
            edges.emplace_back(line_no, words[0], words[1],
                               parse_real(resolved, line_no, words[2]));
        } else {
            fail_at(resolved, line_no, "unrecognized directive '" + keyword + "'");
        }
    }

    if (!saw_skills) fail(resolved + ": missing 'skills:' line");

    Dataset data;
    data.universe = SkillUniverse(skill_names);
    data.pool = ExpertPool(static_cast<int>(skill_names.size()), expert_skills);
    data.expert_ids = expert_ids;
    data.task_ids = task_ids;
    for (const auto& skills : task_skills)
        data.tasks.emplace_back(skills, static_cast<int>(skill_names.size()));

    if (!costs.empty()) {
        if (costs.size() != expert_ids.size())
            fail(resolved + ": expert_cost given for " + std::to_string(costs.size()) + " of " +
                 std::to_string(expert_ids.size()) + " experts (must be all or none)");
        for (const std::string& id : expert_ids) data.expert_costs.push_back(costs.at(id));
    }

    if (!edges.empty()) {
        data.has_graph = true;
        data.graph = CoordinationGraph(data.pool.size());
        std::set<std::pair<int, int>> seen;
        for (const auto& [eline, a, b, w] : edges) {
            if (!expert_index.count(a)) fail_at(resolved, eline, "unknown expert '" + a + "'");
            if (!expert_index.count(b)) fail_at(resolved, eline, "unknown expert '" + b + "'");
            int ia = expert_index.at(a);
            int ib = expert_index.at(b);
            if (ia == ib) fail_at(resolved, eline, "self-edge on expert '" + a + "'");
            if (!seen.insert({std::min(ia, ib), std::max(ia, ib)}).second)
                fail_at(resolved, eline, "duplicate edge '" + a + "' '" + b + "'");
            if (!std::isfinite(w) || w < 0) fail_at(resolved, eline, "edge weight must be finite and >= 0");
            data.graph.set(ia, ib, w);
        }
    }
    return data;
}

void save_dataset(const std::string& path, const Dataset& data) {
    if (data.pool.size() != static_cast<int>(data.expert_ids.size()))
        fail("save_dataset: expert id count does not match pool size");
    if (data.tasks.size() != data.task_ids.size())
        fail("save_dataset: task id count does not match task count");
    if (!data.expert_costs.empty() &&
        data.expert_costs.size() != static_cast<size_t>(data.pool.size()))
        fail("save_dataset: cost vector size does not match pool size");

    std::ofstream out(path);
    if (!out) fail("cannot write dataset file: " + path);
    out << "# teamform dataset\n";
    out << "skills:";
    for (const std::string& name : data.universe.names) out << ' ' << name;
    out << '\n';
    for (int i = 0; i < data.pool.size(); ++i) {
        out << "expert " << data.expert_ids[i] << ':';
        for (int s : data.pool.experts[i]) out << ' ' << data.universe.names[s];
        out << '\n';
    }
    for (size_t i = 0; i < data.expert_costs.size(); ++i)
        out << "expert_cost " << data.expert_ids[i] << ' '
            << format_full(data.expert_costs[i]) << '\n';
    for (size_t t = 0; t < data.tasks.size(); ++t) {
        out << "task " << data.task_ids[t] << ':';
        for (int s : data.tasks[t].required) out << ' ' << data.universe.names[s];
        out << '\n';
    }
    if (data.has_graph) {
        /* every unordered pair, zeros included, so a reload rebuilds the
           graph bit for bit */
        for (int i = 0; i < data.pool.size(); ++i)
            for (int j = i + 1; j < data.pool.size(); ++j)
                out << "edge " << data.expert_ids[i] << ' ' << data.expert_ids[j] << ' '
                    << format_full(data.graph.at(i, j)) << '\n';
    }
    if (!out) fail("write failed: " + path);
}

CoordinationGraph build_jaccard_graph(const ExpertPool& pool) {
    if (pool.size() == 0) fail("build_jaccard_graph: empty pool");
    CoordinationGraph g(pool.size());
    for (int i = 0; i < pool.size(); ++i) {
        for (int j = i + 1; j < pool.size(); ++j) {
            const auto& a = pool.experts[i];
            const auto& b = pool.experts[j];
            std::vector<int> inter;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(inter));
            size_t uni = a.size() + b.size() - inter.size();
            double d = uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter.size()) / uni;
            g.set(i, j, d);
        }
    }
    return g;
}

CoordinationGraph build_collab_graph(const std::vector<std::vector<int>>& collab_counts,
                                     double f, int min_common, double non_edge_distance) {
    int n = static_cast<int>(collab_counts.size());
    if (n == 0) fail("build_collab_graph: empty count matrix");
    if (!(f > 0) || !std::isfinite(f)) fail("build_collab_graph: f must be positive");
    if (min_common < 1) fail("build_collab_graph: min_common must be >= 1");
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(collab_counts[i].size()) != n)
            fail("build_collab_graph: count matrix must be square");
    CoordinationGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (collab_counts[i][j] < 0 || collab_counts[i][j] != collab_counts[j][i])
                fail("build_collab_graph: counts must be symmetric and >= 0");
            double d = collab_counts[i][j] >= min_common
                           ? std::exp(-f * collab_counts[i][j])
                           : non_edge_distance;
            g.set(i, j, d);
        }
    }
    return g;
}

void DatasetSpec::validate() const {
    if (n_experts < 1) fail("dataset spec: n_experts must be >= 1");
    if (n_tasks < 0) fail("dataset spec: n_tasks must be >= 0");
    if (n_skills < 1) fail("dataset spec: n_skills must be >= 1");
    if (!(mean_skills_per_expert >= 1) || mean_skills_per_expert > n_skills)
        fail("dataset spec: mean_skills_per_expert must lie in [1, n_skills]");
    if (!(mean_skills_per_task >= 1) || mean_skills_per_task > n_skills)
        fail("dataset spec: mean_skills_per_task must lie in [1, n_skills]");
    if (!(collab_f > 0) || !std::isfinite(collab_f)) fail("dataset spec: collab_f must be positive");
    if (collab_min_common < 1) fail("dataset spec: collab_min_common must be >= 1");
    if (!(collab_degree >= 0) || !std::isfinite(collab_degree))
        fail("dataset spec: collab_degree must be >= 0");
    if (cost_min < 0 || cost_max < cost_min || !std::isfinite(cost_max))
        fail("dataset spec: need 0 <= cost_min <= cost_max");
}

namespace {

/* Skill-set size 1 + Poisson(mean - 1), clamped to the universe. */
int draw_skill_count(Rng& rng, double mean, int n_skills) {
    int c = 1 + poisson_draw(rng, mean - 1.0);
    return std::min(c, n_skills);
}

double mean_size(const std::vector<std::vector<int>>& sets) {
    if (sets.empty()) return 0.0;
    size_t total = 0;
    for (const auto& s : sets) total += s.size();
    return static_cast<double>(total) / sets.size();
}

bool within_ten_percent(double value, double target) {
    return std::abs(value - target) <= 0.1 * target;
}

} // namespace

std::vector<Task> generate_tasks(int count, int n_skills, double mean_skills, Rng& rng) {
    std::vector<Task> tasks;
    for (int t = 0; t < count; ++t) {
        int c = draw_skill_count(rng, mean_skills, n_skills);
        tasks.emplace_back(sample_distinct(rng, n_skills, c), n_skills);
    }
    return tasks;
}

Dataset generate_synthetic(const DatasetSpec& spec) {
    spec.validate();
    for (int attempt = 0; attempt < 64; ++attempt) {
        Rng rng(spec.seed + 1315423911ULL * static_cast<uint64_t>(attempt));

        std::vector<std::vector<int>> expert_skills;
        for (int i = 0; i < spec.n_experts; ++i) {
            int c = draw_skill_count(rng, spec.mean_skills_per_expert, spec.n_skills);
            expert_skills.push_back(sample_distinct(rng, spec.n_skills, c));
        }
        std::vector<Task> tasks = generate_tasks(spec.n_tasks, spec.n_skills,
                                                 spec.mean_skills_per_task, rng);

        if (!within_ten_percent(mean_size(expert_skills), spec.mean_skills_per_expert)) continue;
        if (spec.n_tasks > 0) {
            std::vector<std::vector<int>> req;
            for (const Task& t : tasks) req.push_back(t.required);
            if (!within_ten_percent(mean_size(req), spec.mean_skills_per_task)) continue;
        }

        Dataset data;
        std::vector<std::string> names;
        for (int s = 0; s < spec.n_skills; ++s) names.push_back("s" + std::to_string(s));
        data.universe = SkillUniverse(names);
        data.pool = ExpertPool(spec.n_skills, expert_skills);
        for (int i = 0; i < spec.n_experts; ++i) data.expert_ids.push_back("e" + std::to_string(i));
        data.tasks = std::move(tasks);
        for (int t = 0; t < spec.n_tasks; ++t) data.task_ids.push_back("t" + std::to_string(t));
        for (int i = 0; i < spec.n_experts; ++i)
            data.expert_costs.push_back(uniform_range(rng, spec.cost_min, spec.cost_max));

        data.has_graph = true;
        if (spec.graph_kind == GraphKind::JaccardComplete) {
            data.graph = build_jaccard_graph(data.pool);
        } else {
            /* sparse collaboration history: edge probability tuned so the
               mean number of collaborators per expert hits collab_degree,
               with min_common + Poisson(2) joint works per collaborating pair */
            int n = spec.n_experts;
            std::vector<std::vector<int>> counts(n, std::vector<int>(n, 0));
            double p_edge = n > 1 ? std::min(1.0, spec.collab_degree / (n - 1)) : 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (uniform01(rng) < p_edge) {
                        int c = spec.collab_min_common + poisson_draw(rng, 2.0);
                        counts[i][j] = counts[j][i] = c;
                    }
            data.graph = build_collab_graph(counts, spec.collab_f, spec.collab_min_common);
        }
        return data;
    }
    fail("generate_synthetic: could not match target statistics in 64 attempts");
}

ProblemInstance make_instance(const Dataset& data, int task_index, Variant variant,
                              double lambda, int k) {
    if (task_index < 0 || task_index >= static_cast<int>(data.tasks.size()))
        fail("make_instance: task index out of range");
    ProblemInstance inst;
    inst.universe = data.universe;
    inst.pool = data.pool;
    inst.task = data.tasks[task_index];
    inst.variant = variant;
    inst.lambda = lambda;
    inst.k = k;
    if (variant == Variant::LinearCost) {
        if (data.expert_costs.empty()) fail("make_instance: dataset has no expert costs");
        inst.kappa = data.expert_costs;
    }
    if (variant == Variant::GraphCost) {
        if (!data.has_graph) fail("make_instance: dataset has no coordination graph");
        inst.graph = data.graph;
    }
    inst.validate();
    return inst;
}

} // namespace teamform
