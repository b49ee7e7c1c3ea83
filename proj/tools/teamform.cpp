#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "teamform/harness.hpp"

using namespace teamform;

/*
 * Command-line front end over the experiment harness:
 *   generate    write a synthetic dataset
 *   build-qubo  emit one QUBO matrix file per task
 *   solve       run a solver roster over every task, with normalized metrics
 *   transfer    reuse trained models on held-out tasks
 *   report      turn metrics CSVs into sorted series and a summary table
 */

int main(int argc, char** argv) {
    CLI::App app{"skill-based team formation: QUBO encodings, solvers and baselines"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string variant = "maxk";
    std::string graph_kind = "collab";
    bool constrain_all_skills = false;
    std::vector<std::string> report_inputs;
    std::string report_out = "report";

    auto add_dataset_opts = [&](CLI::App* c) {
        c->add_option("--data", cfg.dataset_path,
                      "dataset file (omit to generate one from the --synth-* options)");
        c->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
        c->add_option("--seed", cfg.seed, "seed driving every derived random stream")
            ->capture_default_str();
        c->add_option("--synth-experts", cfg.synth.n_experts, "synthetic pool size");
        c->add_option("--synth-tasks", cfg.synth.n_tasks, "synthetic task count");
        c->add_option("--synth-skills", cfg.synth.n_skills, "synthetic skill universe size");
        c->add_option("--synth-expert-skills", cfg.synth.mean_skills_per_expert,
                      "target mean skills per expert")
            ->capture_default_str();
        c->add_option("--synth-task-skills", cfg.synth.mean_skills_per_task,
                      "target mean skills per task")
            ->capture_default_str();
        c->add_option("--synth-graph", graph_kind,
                      "coordination graph kind: collab (sparse collaboration history) "
                      "or jaccard (complete, skill-distance weights)")
            ->check(CLI::IsMember({"jaccard", "collab"}))
            ->capture_default_str();
        c->add_option("--synth-cost-min", cfg.synth.cost_min, "hiring cost range lower end")
            ->capture_default_str();
        c->add_option("--synth-cost-max", cfg.synth.cost_max, "hiring cost range upper end")
            ->capture_default_str();
    };
    auto add_instance_opts = [&](CLI::App* c) {
        c->add_option("--variant", variant, "objective variant: maxk, linear or graph")
            ->check(CLI::IsMember({"maxk", "linear", "graph"}))
            ->capture_default_str();
        c->add_option("--lambda", cfg.lambda, "coverage weight in F")->capture_default_str();
        c->add_option("--k", cfg.k, "team-size bound (maxk variant)")->capture_default_str();
        c->add_option("--tasks", cfg.task_limit, "only use the first N tasks (0 = all)")
            ->capture_default_str();
        c->add_option("--jobs", cfg.jobs, "parallel task workers")->capture_default_str();
    };

    CLI::App* generate = app.add_subcommand("generate", "write a synthetic dataset");
    add_dataset_opts(generate);

    CLI::App* build = app.add_subcommand("build-qubo", "emit one QUBO matrix file per task");
    add_dataset_opts(build);
    add_instance_opts(build);
    build->add_option("--p1", cfg.fixed_params.p1, "linear penalty weight")->capture_default_str();
    build->add_option("--p2", cfg.fixed_params.p2, "quadratic penalty weight")
        ->capture_default_str();
    build->add_flag("--constrain-all-skills", constrain_all_skills,
                    "penalize coverage of every skill instead of only each task's required ones");

    CLI::App* solve = app.add_subcommand("solve", "run the solver roster over every task");
    add_dataset_opts(solve);
    add_instance_opts(solve);
    solve->add_option("--solvers", cfg.solvers, "roster: exact,anneal,relaxed,gnn,greedy,topk")
        ->delimiter(',')
        ->required();
    solve->add_option("--p1-grid", cfg.p1_grid, "linear penalty grid")
        ->delimiter(',')
        ->capture_default_str();
    solve->add_option("--p2-grid", cfg.p2_grid, "quadratic penalty grid")
        ->delimiter(',')
        ->capture_default_str();
    solve->add_flag("--constrain-all-skills", constrain_all_skills,
                    "penalize coverage of every skill instead of only each task's required ones");
    solve->add_option("--exact-cap", cfg.exact_cap,
                      "max experts for the exhaustive reference search")
        ->capture_default_str();
    solve->add_flag("--topk-from-exact", cfg.topk_from_exact,
                    "size the topk baseline by the reference team instead of greedy");
    solve->add_option("--anneal-sweeps", cfg.anneal.sweeps, "annealer sweeps per restart")
        ->capture_default_str();
    solve->add_option("--anneal-restarts", cfg.anneal.restarts, "annealer restarts")
        ->capture_default_str();
    solve->add_option("--anneal-t0", cfg.anneal.t_initial, "annealer initial temperature")
        ->capture_default_str();
    solve->add_option("--anneal-t1", cfg.anneal.t_final, "annealer final temperature")
        ->capture_default_str();
    solve->add_option("--ref-sweeps", cfg.reference_anneal.sweeps,
                      "reference annealer sweeps (pools past the exhaustive cap)")
        ->capture_default_str();
    solve->add_option("--ref-restarts", cfg.reference_anneal.restarts, "reference annealer restarts")
        ->capture_default_str();
    solve->add_option("--relaxed-alpha", cfg.relaxed.alpha, "relaxation binary-regularizer weight")
        ->capture_default_str();
    solve->add_option("--relaxed-step", cfg.relaxed.step, "relaxation gradient step")
        ->capture_default_str();
    solve->add_option("--relaxed-iters", cfg.relaxed.max_iters, "relaxation iterations")
        ->capture_default_str();
    solve->add_option("--gnn-epochs", cfg.gnn.max_epochs, "training epoch cap")
        ->capture_default_str();
    solve->add_option("--gnn-patience", cfg.gnn.early_stop_patience, "early-stopping patience")
        ->capture_default_str();
    solve->add_option("--gnn-tol", cfg.gnn.early_stop_tol, "early-stopping improvement threshold")
        ->capture_default_str();
    solve->add_option("--gnn-dropout", cfg.gnn.dropout,
                      "hidden-layer dropout probability (negative keeps the per-variant default)");
    solve->add_option("--gnn-alpha", cfg.gnn.alpha, "binary-regularizer weight (0 keeps the "
                      "per-variant default)");
    solve->add_option("--gnn-beta", cfg.gnn.beta, "learning rate (0 keeps the per-variant default)");
    solve->add_option("--gnn-d0", cfg.gnn.d0, "embedding size (0 derives from the node count)")
        ->capture_default_str();
    solve->add_option("--gnn-dh", cfg.gnn.dh, "hidden size (0 derives from the node count)")
        ->capture_default_str();

    CLI::App* transfer = app.add_subcommand("transfer", "reuse trained models on held-out tasks");
    add_dataset_opts(transfer);
    add_instance_opts(transfer);
    transfer->add_option("--transfer-tasks", cfg.transfer_tasks, "held-out task count")
        ->capture_default_str();

    CLI::App* report = app.add_subcommand("report", "summarize metrics CSVs");
    report->add_option("files", report_inputs, "metrics CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--out", report_out, "report directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.variant = variant_from_name(variant);
        cfg.synth.graph_kind =
            graph_kind == "collab" ? GraphKind::CollabExpDecay : GraphKind::JaccardComplete;
        cfg.synth.seed = cfg.seed;
        cfg.required_only = !constrain_all_skills;

        if (generate->parsed()) {
            cmd_generate(cfg);
        } else if (build->parsed()) {
            cmd_build_qubo(cfg);
        } else if (solve->parsed()) {
            cmd_solve(cfg);
        } else if (transfer->parsed()) {
            cmd_transfer(cfg);
        } else if (report->parsed()) {
            cmd_report(report_inputs, report_out);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "teamform: %s\n", e.what());
        return 1;
    }
    return 0;
}
