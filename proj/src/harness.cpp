#include "teamform/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "teamform/baselines.hpp"
#include "teamform/common.hpp"

namespace fs = std::filesystem;

namespace teamform {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/* Held-out transfer tasks draw from their own stream so they can never
   collide with the per-task solver seeds (seed + task_index). */
constexpr uint64_t kHeldOutSeedOffset = 424243;

const char* const kMetricsHeader = "task,solver,F,F_hat,coverage,coverage_frac,team_size";

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string task_file(const std::string& dir, int index, const char* ext) {
    return dir + "/task_" + std::to_string(index) + ext;
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) fail("cannot create directory " + path + ": " + ec.message());
}

/* One solver's answer on one task, before normalization. */
struct Candidate {
    std::string solver;
    Assignment team;
    double f = kNegInf;
    double wall = 0.0;
    bool failed = false;
    std::string error;
};

SolverRow to_row(const ProblemInstance& inst, const std::string& task_id, const Candidate& c,
                 double f_ref) {
    SolverRow r;
    r.task_id = task_id;
    r.solver = c.solver;
    r.f = c.f;
    r.f_hat = normalized_objective(c.f, f_ref);
    r.coverage = coverage(inst.task, c.team, inst.pool);
    r.coverage_frac = inst.task.size() == 0 ? 1.0 : fractional_coverage(inst.task, c.team, inst.pool);
    r.team_size = c.team.team_size();
    r.wall_seconds = c.wall;
    return r;
}

Candidate from_team(const std::string& name, const TeamResult& result, double wall) {
    Candidate c;
    c.solver = name;
    c.team = result.x;
    c.f = result.objective_value;
    c.wall = wall;
    return c;
}

/* Best repaired F over the (p1, p2) grid; ties keep the earliest grid point
   (row-major over p1 then p2), so the scan order is part of the contract. */
template <typename SolveFn>
Candidate best_over_grid(const ProblemInstance& inst, const ExperimentConfig& cfg,
                         const std::string& name, SolveFn solve_one) {
    Stopwatch sw;
    Candidate c;
    c.solver = name;
    c.team = Assignment(inst.num_experts());
    bool any = false;
    for (double p1 : cfg.p1_grid)
        for (double p2 : cfg.p2_grid) {
            QuboMatrix q = build_q(inst, PenaltyParams{p1, p2}, cfg.required_only);
            SolveResult r = solve_one(q);
            if (!any || r.objective_value > c.f) {
                any = true;
                c.f = r.objective_value;
                c.team = r.team;
            }
        }
    c.wall = sw.elapsed();
    return c;
}

/* The best answer obtainable without the roster: the exhaustive optimum when
   the pool is enumerable, otherwise a generous annealing pass over the
   truthful penalty points. The greedy answer and the empty team (F = 0) are
   always candidates, so the reference never loses to the cheap baseline. */
Candidate reference_candidate(const ProblemInstance& inst, const ExperimentConfig& cfg,
                              uint64_t task_seed) {
    Stopwatch sw;
    Candidate c;
    c.solver = "reference";
    c.team = Assignment(inst.num_experts());
    c.f = 0.0;
    if (inst.num_experts() <= cfg.exact_cap) {
        TeamResult r = solve_exact_over_x(inst, cfg.exact_cap);
        c.team = r.x;
        c.f = r.objective_value;
    } else {
        TeamResult g = greedy_baseline(inst);
        if (g.objective_value > c.f) {
            c.f = g.objective_value;
            c.team = g.x;
        }
        for (const PenaltyParams& params : cfg.reference_params) {
            QuboMatrix q = build_q(inst, params, cfg.required_only);
            AnnealSchedule sched = cfg.reference_anneal;
            sched.seed = task_seed;
            SolveResult r = solve_anneal(q, inst, sched);
            if (r.objective_value > c.f) {
                c.f = r.objective_value;
                c.team = r.team;
            }
        }
    }
    c.wall = sw.elapsed();
    return c;
}

struct TaskOutcome {
    std::vector<SolverRow> rows;       /* reference first, then roster order */
    std::vector<std::string> failures; /* "task solver: message" for the sidecar */
    bool has_model = false;
    TrainedRelaxation model;
    Candidate reference;
    Task task; /* needed to persist the reference solution */
};

TaskOutcome solve_one_task(const ExperimentConfig& cfg, const Dataset& data, int t) {
    const uint64_t task_seed = cfg.seed + static_cast<uint64_t>(t);
    ProblemInstance inst = make_instance(data, t, cfg.variant, cfg.lambda, cfg.k);
    TaskOutcome out;
    out.task = inst.task;
    out.reference = reference_candidate(inst, cfg, task_seed);

    Candidate greedy_cand;
    bool have_greedy = false;
    auto ensure_greedy = [&]() {
        if (have_greedy) return;
        Stopwatch sw;
        TeamResult r = greedy_baseline(inst);
        greedy_cand = from_team("greedy", r, sw.elapsed());
        have_greedy = true;
    };

    std::vector<Candidate> candidates;
    for (const std::string& name : cfg.solvers) {
        Stopwatch sw;
        try {
            if (name == "greedy") {
                ensure_greedy();
                candidates.push_back(greedy_cand);
            } else if (name == "topk") {
                int k_ref = 0;
                if (cfg.topk_from_exact) {
                    k_ref = out.reference.team.team_size();
                } else {
                    ensure_greedy();
                    k_ref = greedy_cand.team.team_size();
                }
                TeamResult r = topk_jaccard(inst, k_ref);
                candidates.push_back(from_team("topk", r, sw.elapsed()));
            } else if (name == "exact") {
                if (inst.num_skills() + inst.num_experts() <= 26) {
                    candidates.push_back(best_over_grid(
                        inst, cfg, "exact", [&](const QuboMatrix& q) { return solve_exact(q, inst); }));
                } else {
                    /* enumeration out of reach: stand in with the reference answer */
                    Candidate c = out.reference;
                    c.solver = "exact";
                    c.wall = sw.elapsed();
                    candidates.push_back(std::move(c));
                }
            } else if (name == "anneal") {
                AnnealSchedule sched = cfg.anneal;
                sched.seed = task_seed;
                candidates.push_back(best_over_grid(inst, cfg, "anneal", [&](const QuboMatrix& q) {
                    return solve_anneal(q, inst, sched);
                }));
            } else if (name == "relaxed") {
                RelaxedOptions opts = cfg.relaxed;
                opts.seed = task_seed;
                candidates.push_back(best_over_grid(inst, cfg, "relaxed", [&](const QuboMatrix& q) {
                    return solve_relaxed(q, inst, opts);
                }));
            } else if (name == "gnn") {
                GnnConfig gcfg = cfg.gnn;
                const GnnConfig defaults =
                    default_gnn_config(cfg.variant, inst.num_skills(), inst.num_experts());
                if (gcfg.alpha <= 0.0) gcfg.alpha = defaults.alpha;
                if (gcfg.beta <= 0.0) gcfg.beta = defaults.beta;
                if (gcfg.dropout < 0.0) gcfg.dropout = defaults.dropout;
                gcfg.seed = task_seed;
                gcfg.required_only = cfg.required_only;
                auto best = grid_search(inst, gcfg, cfg.p1_grid, cfg.p2_grid);
                std::vector<uint8_t> bits(best.second.final_pi.size(), 0);
                for (size_t i = 0; i < bits.size(); ++i)
                    bits[i] = best.second.final_pi[i] >= 0.5 ? 1 : 0;
                Candidate c;
                c.solver = "gnn";
                c.team = decode_and_repair(inst, bits);
                c.f = objective(inst, c.team);
                c.wall = sw.elapsed();
                candidates.push_back(std::move(c));
                out.model = std::move(best.second);
                out.has_model = true;
            } else {
                fail("unknown solver '" + name + "'"); /* validate() screens this */
            }
        } catch (const Error& e) {
            Candidate c;
            c.solver = name;
            c.team = Assignment(inst.num_experts());
            c.f = kNegInf;
            c.wall = sw.elapsed();
            c.failed = true;
            c.error = e.what();
            candidates.push_back(std::move(c));
        }
    }

    /* The reference is the best answer anyone produced on this task. */
    for (const Candidate& c : candidates)
        if (c.f > out.reference.f) {
            out.reference.f = c.f;
            out.reference.team = c.team;
        }

    const std::string& task_id = data.task_ids[t];
    out.rows.push_back(to_row(inst, task_id, out.reference, out.reference.f));
    for (const Candidate& c : candidates) {
        out.rows.push_back(to_row(inst, task_id, c, out.reference.f));
        if (c.failed) out.failures.push_back(task_id + " " + c.solver + " failed: " + c.error);
    }
    return out;
}

template <typename Fn>
void parallel_for(int count, int jobs, Fn fn) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex mu;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int width = std::min(jobs, count);
    pool.reserve(width);
    for (int w = 0; w < width; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

int effective_task_count(const ExperimentConfig& cfg, const Dataset& data) {
    const int total = static_cast<int>(data.tasks.size());
    if (total == 0) fail("dataset has no tasks");
    if (cfg.task_limit > 0 && cfg.task_limit < total) return cfg.task_limit;
    return total;
}

void write_metrics_csv(const std::string& path, const std::vector<std::string>& comments,
                       const std::vector<SolverRow>& rows,
                       const std::vector<std::string>& solver_order) {
    std::ofstream out(path, std::ios::binary); /* binary keeps LF endings everywhere */
    if (!out) fail("cannot write " + path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << kMetricsHeader << "\n";
    auto emit = [&](const SolverRow& r) {
        out << r.task_id << ',' << r.solver << ',' << format_full(r.f) << ','
            << format_full(r.f_hat) << ',' << format_full(r.coverage) << ','
            << format_full(r.coverage_frac) << ',' << format_full(r.team_size) << '\n';
    };
    for (const SolverRow& r : rows) {
        if (r.task_id == "MEAN") fail("metrics: task id 'MEAN' is reserved for aggregate rows");
        if (r.task_id.find_first_of(",\r\n") != std::string::npos ||
            r.solver.find_first_of(",\r\n") != std::string::npos)
            fail("metrics: task id or solver name contains a CSV separator");
        emit(r);
    }
    for (const std::string& solver : solver_order) emit(mean_of(rows, solver));
    if (!out.good()) fail("failed writing " + path);
}

void write_timings(const std::string& path, const std::vector<TaskOutcome>& outcomes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path);
    out << "# wall-clock seconds per (task, solver); regenerated every run and excluded from"
           " determinism comparisons\n";
    char buf[64];
    for (const TaskOutcome& o : outcomes) {
        for (const SolverRow& r : o.rows) {
            std::snprintf(buf, sizeof buf, "%.6f", r.wall_seconds);
            out << r.task_id << ' ' << r.solver << ' ' << buf << '\n';
        }
        for (const std::string& f : o.failures) out << "# " << f << '\n';
    }
    if (!out.good()) fail("failed writing " + path);
}

/* Reference solutions are persisted so transfer experiments can reuse them
   without re-solving: task index, its skills, the value and the team. */
void save_solution(const std::string& path, int task_index, const Task& task,
                   const Candidate& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path);
    out << "teamform_solution 1\n";
    out << "task " << task_index << "\n";
    out << "skills " << task.required.size();
    for (int s : task.required) out << ' ' << s;
    out << "\n";
    out << "f " << format_full(c.f) << "\n";
    out << "team " << c.team.team_size();
    for (int i = 0; i < c.team.size(); ++i)
        if (c.team.x[i]) out << ' ' << i;
    out << "\n";
    if (!out.good()) fail("failed writing " + path);
}

struct StoredSolution {
    int task_index = -1;
    std::vector<int> skills;
    double f = 0.0;
    std::vector<int> team;
};

StoredSolution load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open solution file " + path);
    auto expect = [&](const char* label) {
        std::string word;
        if (!(in >> word) || word != label)
            fail("solution file " + path + ": expected '" + std::string(label) + "'");
    };
    auto read_indices = [&](std::vector<int>& v) {
        int count = 0;
        if (!(in >> count) || count < 0) fail("solution file " + path + ": bad count");
        v.resize(count);
        for (int& x : v)
            if (!(in >> x) || x < 0) fail("solution file " + path + ": bad index");
    };
    expect("teamform_solution");
    int version = 0;
    if (!(in >> version) || version != 1)
        fail("solution file " + path + ": unsupported version");
    StoredSolution s;
    expect("task");
    if (!(in >> s.task_index) || s.task_index < 0)
        fail("solution file " + path + ": bad task index");
    expect("skills");
    read_indices(s.skills);
    expect("f");
    if (!(in >> s.f)) fail("solution file " + path + ": bad objective value");
    expect("team");
    read_indices(s.team);
    return s;
}

ProblemInstance held_instance(const Dataset& data, const Task& task,
                              const ExperimentConfig& cfg) {
    ProblemInstance inst;
    inst.universe = data.universe;
    inst.pool = data.pool;
    inst.task = task;
    inst.variant = cfg.variant;
    inst.lambda = cfg.lambda;
    inst.k = cfg.k;
    if (cfg.variant == Variant::LinearCost) {
        if (data.expert_costs.empty())
            fail("transfer: dataset has no expert costs for the linear-cost variant");
        inst.kappa = data.expert_costs;
    }
    if (cfg.variant == Variant::GraphCost) {
        if (!data.has_graph)
            fail("transfer: dataset has no coordination graph for the graph-cost variant");
        inst.graph = data.graph;
    }
    inst.validate();
    return inst;
}

double parse_csv_double(const std::string& field, const std::string& path, int lineno) {
    const char* begin = field.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        fail("metrics: " + path + " line " + std::to_string(lineno) + ": bad number '" + field +
             "'");
    return v;
}

void check_mean(const std::string& path, const std::string& solver, const char* field,
                double stored, double recomputed) {
    if (stored == recomputed) return; /* also covers matching infinities */
    const double tol = 1e-12 * std::max(1.0, std::fabs(recomputed));
    if (std::fabs(stored - recomputed) <= tol) return;
    fail("report: " + path + ": MEAN row of '" + solver + "' disagrees with the recomputed mean " +
         field + " (" + format_full(stored) + " vs " + format_full(recomputed) + ")");
}

} // namespace

void ExperimentConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("config: lambda must be positive and finite");
    if (k < 1) fail("config: k must be at least 1");
    if (task_limit < 0) fail("config: task limit cannot be negative");
    if (transfer_tasks < 1) fail("config: transfer task count must be at least 1");
    if (jobs < 1) fail("config: jobs must be at least 1");
    if (exact_cap < 0 || exact_cap > 24)
        fail("config: exhaustive reference cap must lie in [0, 24]");
    if (out_dir.empty()) fail("config: output directory is empty");
    if (p1_grid.empty() || p2_grid.empty()) fail("config: penalty grids cannot be empty");
    for (double p : p1_grid)
        if (!(p > 0.0) || !std::isfinite(p)) fail("config: p1 grid values must be positive");
    for (double p : p2_grid)
        if (!(p > 0.0) || !std::isfinite(p)) fail("config: p2 grid values must be positive");
    if (reference_params.empty()) fail("config: reference penalty list is empty");
    static const char* const known[] = {"exact", "anneal", "relaxed", "gnn", "greedy", "topk"};
    for (size_t i = 0; i < solvers.size(); ++i) {
        bool ok = false;
        for (const char* name : known) ok = ok || solvers[i] == name;
        if (!ok) fail("config: unknown solver '" + solvers[i] + "'");
        for (size_t j = 0; j < i; ++j)
            if (solvers[j] == solvers[i]) fail("config: duplicate solver '" + solvers[i] + "'");
    }
    if (dataset_path.empty()) synth.validate();
}

double normalized_objective(double f, double f_ref) {
    if (f == kNegInf) return 0.0;
    if (f_ref <= 0.0) return f == f_ref ? 1.0 : 0.0;
    return f / f_ref;
}

Dataset prepare_dataset(const ExperimentConfig& cfg, bool save_copy) {
    if (!cfg.dataset_path.empty()) return load_dataset(cfg.dataset_path);
    Dataset data = generate_synthetic(cfg.synth);
    if (save_copy) {
        ensure_dir(cfg.out_dir);
        save_dataset(cfg.out_dir + "/dataset.txt", data);
    }
    return data;
}

void cmd_generate(const ExperimentConfig& cfg) {
    cfg.validate();
    Dataset data = cfg.dataset_path.empty() ? generate_synthetic(cfg.synth)
                                            : load_dataset(cfg.dataset_path);
    ensure_dir(cfg.out_dir);
    save_dataset(cfg.out_dir + "/dataset.txt", data);
}

void cmd_build_qubo(const ExperimentConfig& cfg) {
    cfg.validate();
    Dataset data = prepare_dataset(cfg, /*save_copy=*/true);
    const int t_count = effective_task_count(cfg, data);
    ensure_dir(cfg.out_dir + "/qubo");
    for (int t = 0; t < t_count; ++t) {
        ProblemInstance inst = make_instance(data, t, cfg.variant, cfg.lambda, cfg.k);
        QuboMatrix q = build_q(inst, cfg.fixed_params, cfg.required_only);
        save_qubo(q, task_file(cfg.out_dir + "/qubo", t, ".qubo"));
    }
}

void cmd_solve(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.solvers.empty()) fail("config: solve needs a non-empty solver roster");
    Dataset data = prepare_dataset(cfg, /*save_copy=*/true);
    const int t_count = effective_task_count(cfg, data);
    ensure_dir(cfg.out_dir);
    ensure_dir(cfg.out_dir + "/reference");
    const bool wants_gnn =
        std::find(cfg.solvers.begin(), cfg.solvers.end(), "gnn") != cfg.solvers.end();
    if (wants_gnn) ensure_dir(cfg.out_dir + "/models");

    std::vector<TaskOutcome> outcomes(t_count);
    parallel_for(t_count, cfg.jobs, [&](int t) {
        TaskOutcome out = solve_one_task(cfg, data, t);
        save_solution(task_file(cfg.out_dir + "/reference", t, ".sol"), t, out.task,
                      out.reference);
        if (out.has_model) save_model(task_file(cfg.out_dir + "/models", t, ".gnn"), out.model);
        outcomes[t] = std::move(out);
    });

    std::vector<SolverRow> rows;
    for (const TaskOutcome& o : outcomes) rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    std::vector<std::string> order{"reference"};
    order.insert(order.end(), cfg.solvers.begin(), cfg.solvers.end());
    write_metrics_csv(
        cfg.out_dir + "/metrics.csv",
        {"one row per (task, solver); the reference row carries the best F available on the task",
         "F_hat = F / F_ref; F_ref <= 0 -> F_hat = (F == F_ref); F = -inf (infeasible team or "
         "solver failure) -> F_hat = 0",
         "MEAN rows are arithmetic means over the per-task rows of one solver"},
        rows, order);
    write_timings(cfg.out_dir + "/timings.txt", outcomes);
}

void cmd_transfer(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::string data_path =
        !cfg.dataset_path.empty() ? cfg.dataset_path : cfg.out_dir + "/dataset.txt";
    if (!fs::exists(resolve_data_path(data_path)))
        fail("transfer: no dataset at " + data_path + "; run solve first or pass one explicitly");
    Dataset data = load_dataset(data_path);
    const int t_count = static_cast<int>(data.tasks.size());

    const std::string model_dir = cfg.out_dir + "/models";
    std::vector<TrainedRelaxation> models;
    for (int t = 0; t < t_count; ++t) {
        const std::string path = task_file(model_dir, t, ".gnn");
        if (fs::exists(path)) models.push_back(load_model(path));
    }
    if (models.empty())
        fail("transfer: no trained models under " + model_dir +
             "; run solve with the gnn solver first");

    std::vector<StoredSolution> stored;
    for (int t = 0; t < t_count; ++t) {
        const std::string path = task_file(cfg.out_dir + "/reference", t, ".sol");
        if (fs::exists(path)) stored.push_back(load_solution(path));
    }
    if (stored.empty())
        fail("transfer: no stored reference solutions under " + cfg.out_dir +
             "/reference; run solve first");

    Rng held_rng(cfg.seed + kHeldOutSeedOffset);
    std::vector<Task> held =
        generate_tasks(cfg.transfer_tasks, data.pool.m, cfg.synth.mean_skills_per_task, held_rng);

    std::vector<TaskOutcome> outcomes(cfg.transfer_tasks);
    parallel_for(cfg.transfer_tasks, cfg.jobs, [&](int h) {
        ProblemInstance inst = held_instance(data, held[h], cfg);
        const std::string task_id = "h" + std::to_string(h);

        SolveResult sim = transfer_sim(models, inst);
        SolveResult rnd = transfer_rand(models, inst, cfg.seed + static_cast<uint64_t>(h));

        Stopwatch sw;
        int best_j = 0;
        double best_sim = -1.0;
        for (size_t j = 0; j < stored.size(); ++j) {
            double s = jaccard_similarity(stored[j].skills, held[h].required);
            if (s > best_sim) {
                best_sim = s;
                best_j = static_cast<int>(j);
            }
        }
        Candidate qs;
        qs.solver = "qsolver_sim";
        qs.team = Assignment(inst.num_experts());
        for (int i : stored[best_j].team) {
            if (i >= inst.num_experts())
                fail("transfer: stored team index " + std::to_string(i) + " is out of range");
            qs.team.x[i] = 1;
        }
        qs.f = objective(inst, qs.team);
        qs.wall = sw.elapsed();

        Candidate cs;
        cs.solver = sim.solver;
        cs.team = sim.team;
        cs.f = sim.objective_value;
        cs.wall = sim.wall_seconds;
        Candidate cr;
        cr.solver = rnd.solver;
        cr.team = rnd.team;
        cr.f = rnd.objective_value;
        cr.wall = rnd.wall_seconds;

        const double f_ref = std::max(std::max(cs.f, cr.f), qs.f);
        TaskOutcome out;
        out.rows.push_back(to_row(inst, task_id, cs, f_ref));
        out.rows.push_back(to_row(inst, task_id, cr, f_ref));
        out.rows.push_back(to_row(inst, task_id, qs, f_ref));
        outcomes[h] = std::move(out);
    });

    std::vector<SolverRow> rows;
    for (const TaskOutcome& o : outcomes) rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    write_metrics_csv(
        cfg.out_dir + "/transfer_metrics.csv",
        {"trained-model reuse on held-out tasks over the same expert pool",
         "transfer_sim picks the model whose source task is most similar; transfer_rand samples "
         "up to 3 models; qsolver_sim replays the stored reference team of the most similar "
         "source task",
         "F_hat normalizes by the best of the three methods on each task",
         "MEAN rows are arithmetic means over the per-task rows of one solver"},
        rows, {"transfer_sim", "transfer_rand", "qsolver_sim"});
    write_timings(cfg.out_dir + "/transfer_timings.txt", outcomes);
}

void cmd_report(const std::vector<std::string>& metrics_csvs, const std::string& out_dir) {
    if (metrics_csvs.empty()) fail("report: no metrics files given");
    ensure_dir(out_dir);
    const std::string summary_path = out_dir + "/summary.csv";
    std::ofstream summary(summary_path, std::ios::binary);
    if (!summary) fail("cannot write " + summary_path);
    summary << "dataset,solver,mean_F,mean_F_hat,mean_coverage,mean_coverage_frac,mean_team_size\n";
    for (const std::string& path : metrics_csvs) {
        std::vector<SolverRow> rows = read_metrics_csv(path);
        const std::string dataset = fs::path(path).stem().string();
        std::vector<std::string> solvers; /* first-appearance order of per-task rows */
        for (const SolverRow& r : rows)
            if (r.task_id != "MEAN" &&
                std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end())
                solvers.push_back(r.solver);
        if (solvers.empty()) fail("report: " + path + " has no per-task rows");
        for (const std::string& solver : solvers) {
            std::vector<double> series_f;
            for (const SolverRow& r : rows)
                if (r.solver == solver && r.task_id != "MEAN") series_f.push_back(r.f);
            std::sort(series_f.begin(), series_f.end(), std::greater<double>());
            const std::string series_path = out_dir + "/series_" + dataset + "_" + solver + ".csv";
            std::ofstream series(series_path, std::ios::binary);
            if (!series) fail("cannot write " + series_path);
            series << "rank,F\n";
            for (size_t i = 0; i < series_f.size(); ++i)
                series << (i + 1) << ',' << format_full(series_f[i]) << '\n';
            if (!series.good()) fail("failed writing " + series_path);

            SolverRow mean = mean_of(rows, solver);
            for (const SolverRow& r : rows) {
                if (r.task_id != "MEAN" || r.solver != solver) continue;
                check_mean(path, solver, "F", r.f, mean.f);
                check_mean(path, solver, "F_hat", r.f_hat, mean.f_hat);
                check_mean(path, solver, "coverage", r.coverage, mean.coverage);
                check_mean(path, solver, "coverage_frac", r.coverage_frac, mean.coverage_frac);
                check_mean(path, solver, "team_size", r.team_size, mean.team_size);
            }
            summary << dataset << ',' << solver << ',' << format_full(mean.f) << ','
                    << format_full(mean.f_hat) << ',' << format_full(mean.coverage) << ','
                    << format_full(mean.coverage_frac) << ',' << format_full(mean.team_size)
                    << '\n';
        }
    }
    if (!summary.good()) fail("failed writing " + summary_path);
}

std::vector<SolverRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("metrics: cannot open " + path);
    std::vector<SolverRow> rows;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != kMetricsHeader)
                fail("metrics: " + path + " line " + std::to_string(lineno) +
                     ": unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        size_t start = 0;
        for (;;) {
            size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 7)
            fail("metrics: " + path + " line " + std::to_string(lineno) + ": expected 7 fields, got " +
                 std::to_string(fields.size()));
        SolverRow r;
        r.task_id = fields[0];
        r.solver = fields[1];
        if (r.task_id.empty() || r.solver.empty())
            fail("metrics: " + path + " line " + std::to_string(lineno) + ": empty field");
        r.f = parse_csv_double(fields[2], path, lineno);
        r.f_hat = parse_csv_double(fields[3], path, lineno);
        r.coverage = parse_csv_double(fields[4], path, lineno);
        r.coverage_frac = parse_csv_double(fields[5], path, lineno);
        r.team_size = parse_csv_double(fields[6], path, lineno);
        rows.push_back(std::move(r));
    }
    if (!saw_header) fail("metrics: " + path + " has no header row");
    return rows;
}

SolverRow mean_of(const std::vector<SolverRow>& rows, const std::string& solver) {
    SolverRow m;
    m.task_id = "MEAN";
    m.solver = solver;
    int count = 0;
    for (const SolverRow& r : rows) {
        if (r.solver != solver || r.task_id == "MEAN") continue;
        m.f += r.f;
        m.f_hat += r.f_hat;
        m.coverage += r.coverage;
        m.coverage_frac += r.coverage_frac;
        m.team_size += r.team_size;
        ++count;
    }
    if (count == 0) fail("metrics: no rows for solver '" + solver + "'");
    m.f /= count;
    m.f_hat /= count;
    m.coverage /= count;
    m.coverage_frac /= count;
    m.team_size /= count;
    return m;
}

} // namespace teamform
