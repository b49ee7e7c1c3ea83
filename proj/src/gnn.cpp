#include <cstdlib>
#include "teamform/gnn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "teamform/baselines.hpp"

namespace teamform {

namespace {

constexpr double kBnEps = 1e-5;
constexpr double kBnMomentum = 0.1;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

/* C = A * B */
Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

/* C = A^T * B */
Matrix matmul_at(const Matrix& a, const Matrix& b) {
    Matrix c(a.cols, b.cols);
    for (int k = 0; k < a.rows; ++k)
        for (int i = 0; i < a.cols; ++i) {
            double aki = a.at(k, i);
            if (aki == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aki * b.at(k, j);
        }
    return c;
}

/* C = A * B^T */
Matrix matmul_bt(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows, b.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.rows; ++j) {
            double s = 0.0;
            for (int k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(j, k);
            c.at(i, j) = s;
        }
    return c;
}

/* Y = (I + A) X; A symmetric, so this doubles as its own transpose. */
Matrix aggregate(const Matrix& adj, const Matrix& x) {
    Matrix y = matmul(adj, x);
    for (size_t i = 0; i < x.a.size(); ++i) y.a[i] += x.a[i];
    return y;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

void check_model_shapes(const TrainedRelaxation& model, const ProblemGraph& graph) {
    int nodes = graph.nodes();
    if (model.m != graph.m || model.n != graph.n)
        fail("gnn: model was trained on a different graph shape");
    if (model.relations() != graph.relations())
        fail("gnn: model relation count does not match the graph");
    if (model.h0.rows != nodes || model.h0.cols != model.d0) fail("gnn: bad h0 shape");
    for (const Matrix& w : model.w0)
        if (w.rows != model.d0 || w.cols != model.dh) fail("gnn: bad w0 shape");
    if (static_cast<int>(model.b1.size()) != model.dh) fail("gnn: bad b1 shape");
    if (static_cast<int>(model.bn_gamma.size()) != model.dh ||
        static_cast<int>(model.bn_beta.size()) != model.dh ||
        static_cast<int>(model.bn_mean.size()) != model.dh ||
        static_cast<int>(model.bn_var.size()) != model.dh)
        fail("gnn: bad batchnorm shape");
    for (const auto& w : model.w1)
        if (static_cast<int>(w.size()) != model.dh) fail("gnn: bad w1 shape");
}

std::vector<uint8_t> round_pi(const std::vector<double>& pi) {
    std::vector<uint8_t> y(pi.size());
    for (size_t i = 0; i < pi.size(); ++i) y[i] = pi[i] >= 0.5 ? 1 : 0;
    return y;
}

} // namespace

ProblemGraph build_graph(const ProblemInstance& inst) {
    inst.validate();
    ProblemGraph g;
    g.m = inst.num_skills();
    g.n = inst.num_experts();
    int nodes = g.nodes();

    Matrix se(nodes, nodes);
    for (int i = 0; i < g.n; ++i)
        for (int s : inst.pool.experts[i]) {
            se.at(s, g.m + i) = 1.0;
            se.at(g.m + i, s) = 1.0;
        }
    g.adj.push_back(std::move(se));

    if (inst.variant == Variant::GraphCost) {
        Matrix ee(nodes, nodes);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (i != j && inst.graph.at(i, j) > 0.0)
                    ee.at(g.m + i, g.m + j) = inst.graph.at(i, j);
        g.adj.push_back(std::move(ee));
    }
    return g;
}

void GnnConfig::validate() const {
    if (d0 < 0 || dh < 0) fail("gnn config: embedding sizes must be >= 0 (0 = derive)");
    if (!(dropout >= 0.0) || dropout >= 1.0) fail("gnn config: dropout must lie in [0, 1)");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("gnn config: alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) fail("gnn config: beta must be positive");
    if (max_epochs < 1) fail("gnn config: max_epochs must be >= 1");
    if (!(early_stop_tol >= 0.0) || !std::isfinite(early_stop_tol))
        fail("gnn config: early_stop_tol must be >= 0");
    if (early_stop_patience < 1) fail("gnn config: early_stop_patience must be >= 1");
}

GnnConfig default_gnn_config(Variant v, int m, int n) {
    GnnConfig cfg;
    cfg.d0 = std::max(1, (m + n) / 2);
    cfg.dh = std::max(1, (m + n) / 4);
    switch (v) {
        case Variant::LinearCost:
            cfg.dropout = 0.2;
            cfg.alpha = 1.5;
            cfg.beta = 5e-3;
            break;
        case Variant::MaxKCover:
            cfg.dropout = 0.25;
            cfg.alpha = 2.0;
            cfg.beta = 1e-3;
            break;
        case Variant::GraphCost:
            cfg.dropout = 0.25;
            cfg.alpha = 2.5;
            cfg.beta = 1e-2;
            break;
    }
    return cfg;
}

ForwardTrace forward_trace(const TrainedRelaxation& model, const ProblemGraph& graph,
                           bool use_batch_stats, double dropout_p, Rng* rng) {
    check_model_shapes(model, graph);
    int nodes = graph.nodes();
    int dh = model.dh;
    ForwardTrace t;

    for (const Matrix& adj : graph.adj) t.agg_in.push_back(aggregate(adj, model.h0));

    t.z1 = Matrix(nodes, dh);
    for (int r = 0; r < graph.relations(); ++r) {
        Matrix part = matmul(t.agg_in[r], model.w0[r]);
        for (size_t i = 0; i < part.a.size(); ++i) t.z1.a[i] += part.a[i];
    }
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < dh; ++j) t.z1.at(i, j) += model.b1[j];

    /* batchnorm over the node dimension, one statistic per hidden feature */
    t.used_batch_stats = use_batch_stats;
    t.xhat = Matrix(nodes, dh);
    if (use_batch_stats) {
        t.batch_mean.assign(dh, 0.0);
        t.batch_var.assign(dh, 0.0);
        for (int j = 0; j < dh; ++j) {
            double mu = 0.0;
            for (int i = 0; i < nodes; ++i) mu += t.z1.at(i, j);
            mu /= nodes;
            double var = 0.0;
            for (int i = 0; i < nodes; ++i) {
                double d = t.z1.at(i, j) - mu;
                var += d * d;
            }
            var /= nodes; /* biased, matching the backward formula */
            t.batch_mean[j] = mu;
            t.batch_var[j] = var;
            double inv = 1.0 / std::sqrt(var + kBnEps);
            for (int i = 0; i < nodes; ++i) t.xhat.at(i, j) = (t.z1.at(i, j) - mu) * inv;
        }
    } else {
        for (int j = 0; j < dh; ++j) {
            double inv = 1.0 / std::sqrt(model.bn_var[j] + kBnEps);
            for (int i = 0; i < nodes; ++i)
                t.xhat.at(i, j) = (t.z1.at(i, j) - model.bn_mean[j]) * inv;
        }
    }

    for (double v : t.xhat.a)
        if (!std::isfinite(v)) fail("gnn: non-finite activation after batchnorm");

    t.dropout_mask = Matrix(nodes, dh);
    std::fill(t.dropout_mask.a.begin(), t.dropout_mask.a.end(), 1.0);
    if (rng != nullptr && dropout_p > 0.0) {
        double keep_scale = 1.0 / (1.0 - dropout_p);
        for (double& mv : t.dropout_mask.a) mv = uniform01(*rng) < dropout_p ? 0.0 : keep_scale;
    }

    t.a1 = Matrix(nodes, dh);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < dh; ++j) {
            double u = model.bn_gamma[j] * t.xhat.at(i, j) + model.bn_beta[j];
            t.a1.at(i, j) = u > 0.0 ? u * t.dropout_mask.at(i, j) : 0.0;
        }

    for (const Matrix& adj : graph.adj) t.agg_hidden.push_back(aggregate(adj, t.a1));

    t.z2.assign(nodes, model.b2);
    for (int r = 0; r < graph.relations(); ++r)
        for (int i = 0; i < nodes; ++i) {
            double s = 0.0;
            for (int j = 0; j < dh; ++j) s += t.agg_hidden[r].at(i, j) * model.w1[r][j];
            t.z2[i] += s;
        }

    t.pi.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
        if (!std::isfinite(t.z2[i])) fail("gnn: non-finite activation in output layer");
        t.pi[i] = sigmoid(t.z2[i]);
    }
    return t;
}

std::vector<double> forward(const TrainedRelaxation& model, const ProblemGraph& graph) {
    return forward_trace(model, graph, /*use_batch_stats=*/false, 0.0, nullptr).pi;
}

Gradients backward(const TrainedRelaxation& model, const ProblemGraph& graph,
                   const ForwardTrace& trace, const QuboMatrix& qubo, double alpha) {
    check_model_shapes(model, graph);
    int nodes = graph.nodes();
    int dh = model.dh;
    int rels = graph.relations();
    Gradients g;

    /* dL/dz2 through the loss and the sigmoid */
    std::vector<double> dpi = relaxed_gradient(qubo, trace.pi, alpha);
    std::vector<double> dz2(nodes);
    for (int i = 0; i < nodes; ++i) dz2[i] = dpi[i] * trace.pi[i] * (1.0 - trace.pi[i]);

    g.b2 = 0.0;
    for (double v : dz2) g.b2 += v;

    g.w1.assign(rels, std::vector<double>(dh, 0.0));
    for (int r = 0; r < rels; ++r)
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < dh; ++j) g.w1[r][j] += trace.agg_hidden[r].at(i, j) * dz2[i];

    /* back through the second aggregation: dA1 = sum_r (I + A_r) (dz2 w1_r^T) */
    Matrix da1(nodes, dh);
    for (int r = 0; r < rels; ++r) {
        Matrix outer(nodes, dh);
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < dh; ++j) outer.at(i, j) = dz2[i] * model.w1[r][j];
        Matrix part = aggregate(graph.adj[r], outer);
        for (size_t i = 0; i < part.a.size(); ++i) da1.a[i] += part.a[i];
    }

    /* dropout, then the ReLU gate on u = gamma * xhat + beta */
    Matrix du(nodes, dh);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < dh; ++j) {
            double u = model.bn_gamma[j] * trace.xhat.at(i, j) + model.bn_beta[j];
            du.at(i, j) = u > 0.0 ? da1.at(i, j) * trace.dropout_mask.at(i, j) : 0.0;
        }

    g.bn_gamma.assign(dh, 0.0);
    g.bn_beta.assign(dh, 0.0);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < dh; ++j) {
            g.bn_gamma[j] += du.at(i, j) * trace.xhat.at(i, j);
            g.bn_beta[j] += du.at(i, j);
        }

    Matrix dz1(nodes, dh);
    if (trace.used_batch_stats) {
        /* normalization used this batch's statistics, so they carry gradient:
           dz1 = inv/N * (N*dxhat - sum(dxhat) - xhat * sum(dxhat .* xhat)) */
        for (int j = 0; j < dh; ++j) {
            double inv = 1.0 / std::sqrt(trace.batch_var[j] + kBnEps);
            double sum_dx = 0.0;
            double sum_dx_x = 0.0;
            for (int i = 0; i < nodes; ++i) {
                double dx = du.at(i, j) * model.bn_gamma[j];
                sum_dx += dx;
                sum_dx_x += dx * trace.xhat.at(i, j);
            }
            for (int i = 0; i < nodes; ++i) {
                double dx = du.at(i, j) * model.bn_gamma[j];
                dz1.at(i, j) =
                    inv / nodes * (nodes * dx - sum_dx - trace.xhat.at(i, j) * sum_dx_x);
            }
        }
    } else {
        for (int j = 0; j < dh; ++j) {
            double inv = 1.0 / std::sqrt(model.bn_var[j] + kBnEps);
            for (int i = 0; i < nodes; ++i)
                dz1.at(i, j) = du.at(i, j) * model.bn_gamma[j] * inv;
        }
    }

    g.b1.assign(dh, 0.0);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < dh; ++j) g.b1[j] += dz1.at(i, j);

    g.w0.clear();
    for (int r = 0; r < rels; ++r) g.w0.push_back(matmul_at(trace.agg_in[r], dz1));

    g.h0 = Matrix(nodes, model.d0);
    for (int r = 0; r < rels; ++r) {
        Matrix part = aggregate(graph.adj[r], matmul_bt(dz1, model.w0[r]));
        for (size_t i = 0; i < part.a.size(); ++i) g.h0.a[i] += part.a[i];
    }
    return g;
}

namespace {

/* Spread of the output logits right after init. Around this scale the
   sigmoid is still steep, both rounding outcomes are represented among the
   nodes, and training can flip any node without fighting saturation. */
inline double init_logit_sd() {
    const char* s = std::getenv("TF_INIT_SD");
    return s ? std::atof(s) : 4.0;
}
inline double init_logit_mean() {
    const char* s = std::getenv("TF_INIT_MEAN");
    return s ? std::atof(s) : 0.0;
}

TrainedRelaxation init_model(const ProblemInstance& inst, const ProblemGraph& graph,
                             const PenaltyParams& params, const GnnConfig& cfg, int d0, int dh,
                             Rng& rng) {
    TrainedRelaxation model;
    model.variant = inst.variant;
    model.m = inst.num_skills();
    model.n = inst.num_experts();
    model.d0 = d0;
    model.dh = dh;
    model.seed = cfg.seed;
    model.trained_params = params;
    model.source_task = inst.task;

    int nodes = model.m + model.n;
    int rels = inst.variant == Variant::GraphCost ? 2 : 1;

    /* uniform fan-in scaled init; draw order is part of the seed contract */
    double a_h0 = std::sqrt(3.0 / d0);
    model.h0 = Matrix(nodes, d0);
    for (double& v : model.h0.a) v = uniform_range(rng, -a_h0, a_h0);
    double a_w0 = std::sqrt(6.0 / (d0 + dh));
    for (int r = 0; r < rels; ++r) {
        Matrix w(d0, dh);
        for (double& v : w.a) v = uniform_range(rng, -a_w0, a_w0);
        model.w0.push_back(std::move(w));
    }
    double a_w1 = std::sqrt(6.0 / (dh + 1));
    for (int r = 0; r < rels; ++r) {
        std::vector<double> w(dh);
        for (double& v : w) v = uniform_range(rng, -a_w1, a_w1);
        model.w1.push_back(std::move(w));
    }
    model.b1.assign(dh, 0.0);
    model.bn_gamma.assign(dh, 1.0);
    model.bn_beta.assign(dh, 0.0);
    model.bn_mean.assign(dh, 0.0);
    model.bn_var.assign(dh, 1.0);
    model.b2 = 0.0;

    /* Normalize the initial output logits with one dropout-free probe pass.
       Sum aggregation over a dense relation hands every node almost the same
       large activation, so a random output draw yields logits that share one
       big offset: the sigmoid saturates on the same side for all nodes and
       training dies before it can tell them apart. Rescaling the output
       weights and cancelling the measured mean with the bias keeps each
       node's logit in the live range while preserving their differences. */
    ForwardTrace probe = forward_trace(model, graph, /*use_batch_stats=*/true, 0.0, nullptr);
    int nodes_probed = static_cast<int>(probe.z2.size());
    double mu = 0.0;
    for (double z : probe.z2) mu += z;
    mu /= nodes_probed;
    double var = 0.0;
    for (double z : probe.z2) var += (z - mu) * (z - mu);
    double sd = std::sqrt(var / nodes_probed);
    double scale = sd > 1e-9 ? init_logit_sd() / sd : 1.0;
    for (auto& w : model.w1)
        for (double& v : w) v *= scale;
    model.b2 = -mu * scale + init_logit_mean();
    return model;
}

void apply_update(TrainedRelaxation& model, const Gradients& g, double beta) {
    for (size_t i = 0; i < model.h0.a.size(); ++i) model.h0.a[i] -= beta * g.h0.a[i];
    for (int r = 0; r < model.relations(); ++r) {
        for (size_t i = 0; i < model.w0[r].a.size(); ++i)
            model.w0[r].a[i] -= beta * g.w0[r].a[i];
        for (int j = 0; j < model.dh; ++j) model.w1[r][j] -= beta * g.w1[r][j];
    }
    for (int j = 0; j < model.dh; ++j) {
        model.b1[j] -= beta * g.b1[j];
        model.bn_gamma[j] -= beta * g.bn_gamma[j];
        model.bn_beta[j] -= beta * g.bn_beta[j];
    }
    model.b2 -= beta * g.b2;
}

} // namespace

TrainedRelaxation train(const ProblemInstance& inst, const PenaltyParams& params,
                        const GnnConfig& config) {
    config.validate();
    inst.validate();
    GnnConfig defaults = default_gnn_config(inst.variant, inst.num_skills(), inst.num_experts());
    int d0 = config.d0 > 0 ? config.d0 : defaults.d0;
    int dh = config.dh > 0 ? config.dh : defaults.dh;

    QuboMatrix q = build_q(inst, params, config.required_only);
    ProblemGraph graph = build_graph(inst);
    Rng rng(config.seed);
    TrainedRelaxation model = init_model(inst, graph, params, config, d0, dh, rng);

    double best = std::numeric_limits<double>::infinity();
    int streak = 0;
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        ForwardTrace trace;
        try {
            trace = forward_trace(model, graph, /*use_batch_stats=*/true, config.dropout, &rng);
        } catch (const Error& e) {
            fail("gnn training diverged at epoch " + std::to_string(epoch) + ": " + e.what() +
                 " (lower beta)");
        }
        for (int j = 0; j < dh; ++j) {
            model.bn_mean[j] =
                (1.0 - kBnMomentum) * model.bn_mean[j] + kBnMomentum * trace.batch_mean[j];
            model.bn_var[j] =
                (1.0 - kBnMomentum) * model.bn_var[j] + kBnMomentum * trace.batch_var[j];
        }

        double loss_value = gnn_loss(trace.pi, q, config.alpha);
        if (!std::isfinite(loss_value))
            fail("gnn training diverged at epoch " + std::to_string(epoch) +
                 " (loss is not finite; lower beta)");
        model.loss_history.push_back(loss_value);

        if (loss_value < best - config.early_stop_tol) {
            best = loss_value;
            streak = 0;
        } else if (++streak >= config.early_stop_patience) {
            break;
        }

        Gradients g = backward(model, graph, trace, q, config.alpha);
        apply_update(model, g, config.beta);
    }

    model.final_pi = forward(model, graph);
    return model;
}

std::pair<PenaltyParams, TrainedRelaxation> grid_search(const ProblemInstance& inst,
                                                        const GnnConfig& config,
                                                        const std::vector<double>& p1_grid,
                                                        const std::vector<double>& p2_grid) {
    if (p1_grid.empty() || p2_grid.empty()) fail("grid_search: empty penalty grid");
    for (double v : p1_grid)
        if (!(v >= 0.1) || !(v <= 100.0)) fail("grid_search: p1 values must lie in [0.1, 100]");
    for (double v : p2_grid)
        if (!(v >= 0.1) || !(v <= 100.0)) fail("grid_search: p2 values must lie in [0.1, 100]");

    bool has_best = false;
    double best_f = 0.0;
    PenaltyParams best_params;
    TrainedRelaxation best_model;
    uint64_t run = 0;
    for (double p1 : p1_grid)
        for (double p2 : p2_grid) {
            PenaltyParams params{p1, p2};
            /* fresh embeddings per run, so one unlucky draw cannot sink the
               whole grid; still deterministic given config.seed */
            GnnConfig run_config = config;
            run_config.seed = config.seed + run++;
            TrainedRelaxation model = train(inst, params, run_config);
            Assignment team = decode_and_repair(inst, round_pi(model.final_pi));
            double f = objective(inst, team);
            bool better = !has_best || f > best_f ||
                          (f == best_f && (p1 < best_params.p1 ||
                                           (p1 == best_params.p1 && p2 < best_params.p2)));
            if (better) {
                has_best = true;
                best_f = f;
                best_params = params;
                best_model = std::move(model);
            }
        }
    return {best_params, std::move(best_model)};
}

int pick_most_similar(const std::vector<TrainedRelaxation>& models, const Task& task) {
    if (models.empty()) fail("transfer: no trained models available");
    int best = 0;
    double best_sim = -1.0;
    for (size_t i = 0; i < models.size(); ++i) {
        double sim = jaccard_similarity(models[i].source_task.required, task.required);
        if (sim > best_sim) {
            best_sim = sim;
            best = static_cast<int>(i);
        }
    }
    return best;
}

namespace {

SolveResult run_transfer_inference(const TrainedRelaxation& model, const ProblemInstance& inst,
                                   const std::string& label) {
    double start = now_seconds();
    if (model.variant != inst.variant) fail("transfer: model and instance variants differ");
    ProblemGraph graph = build_graph(inst);
    SolveResult r;
    r.solver = label;
    r.y = round_pi(forward(model, graph));
    r.team = decode_and_repair(inst, r.y);
    r.objective_value = objective(inst, r.team);
    QuboMatrix q = build_q(inst, model.trained_params);
    r.energy_value = energy(q, r.y);
    r.wall_seconds = now_seconds() - start;
    return r;
}

} // namespace

SolveResult transfer_sim(const std::vector<TrainedRelaxation>& models,
                         const ProblemInstance& inst) {
    int pick = pick_most_similar(models, inst.task);
    return run_transfer_inference(models[pick], inst, "transfer_sim");
}

SolveResult transfer_rand(const std::vector<TrainedRelaxation>& models,
                          const ProblemInstance& inst, uint64_t seed) {
    if (models.empty()) fail("transfer: no trained models available");
    Rng rng(seed);
    int count = std::min<int>(3, static_cast<int>(models.size()));
    std::vector<int> picks = sample_distinct(rng, static_cast<int>(models.size()), count);
    SolveResult best;
    bool has_best = false;
    for (int idx : picks) {
        SolveResult r = run_transfer_inference(models[idx], inst, "transfer_rand");
        if (!has_best || r.objective_value > best.objective_value) {
            has_best = true;
            best = std::move(r);
        }
    }
    return best;
}

namespace {

void write_doubles(std::ofstream& out, const std::string& label,
                   const std::vector<double>& values) {
    out << label;
    for (double v : values) out << ' ' << format_full(v);
    out << '\n';
}

void expect_label(std::ifstream& in, const std::string& path, const std::string& want) {
    std::string got;
    if (!(in >> got) || got != want)
        fail(path + ": expected section '" + want + "', found '" + got + "'");
}

std::vector<double> read_doubles(std::ifstream& in, const std::string& path,
                                 const std::string& label, size_t count) {
    expect_label(in, path, label);
    std::vector<double> values(count);
    for (size_t i = 0; i < count; ++i)
        if (!(in >> values[i])) fail(path + ": truncated section '" + label + "'");
    return values;
}

} // namespace

void save_model(const std::string& path, const TrainedRelaxation& model) {
    std::ofstream out(path);
    if (!out) fail("cannot write model file: " + path);
    int nodes = model.m + model.n;
    out << "teamform_gnn 1\n";
    out << "variant " << variant_name(model.variant) << '\n';
    out << "dims " << model.m << ' ' << model.n << ' ' << model.d0 << ' ' << model.dh << ' '
        << model.relations() << '\n';
    out << "seed " << model.seed << '\n';
    out << "penalty " << format_full(model.trained_params.p1) << ' '
        << format_full(model.trained_params.p2) << '\n';
    out << "source_task " << model.source_task.size();
    for (int s : model.source_task.required) out << ' ' << s;
    out << '\n';
    if (model.h0.rows != nodes || model.h0.cols != model.d0) fail("save_model: bad h0 shape");
    write_doubles(out, "h0", model.h0.a);
    for (int r = 0; r < model.relations(); ++r)
        write_doubles(out, "w0_" + std::to_string(r), model.w0[r].a);
    write_doubles(out, "b1", model.b1);
    write_doubles(out, "bn_gamma", model.bn_gamma);
    write_doubles(out, "bn_beta", model.bn_beta);
    write_doubles(out, "bn_mean", model.bn_mean);
    write_doubles(out, "bn_var", model.bn_var);
    for (int r = 0; r < model.relations(); ++r)
        write_doubles(out, "w1_" + std::to_string(r), model.w1[r]);
    out << "b2 " << format_full(model.b2) << '\n';
    out << "final_pi " << model.final_pi.size();
    for (double v : model.final_pi) out << ' ' << format_full(v);
    out << '\n';
    out << "loss_history " << model.loss_history.size();
    for (double v : model.loss_history) out << ' ' << format_full(v);
    out << '\n';
    if (!out) fail("write failed: " + path);
}

TrainedRelaxation load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open model file: " + path);
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "teamform_gnn" || version != 1)
        fail(path + ": not a teamform_gnn version 1 file");

    TrainedRelaxation model;
    expect_label(in, path, "variant");
    std::string vname;
    in >> vname;
    model.variant = variant_from_name(vname);
    expect_label(in, path, "dims");
    int rels = 0;
    if (!(in >> model.m >> model.n >> model.d0 >> model.dh >> rels))
        fail(path + ": bad dims line");
    if (model.m < 0 || model.n < 1 || model.d0 < 1 || model.dh < 1 || rels < 1 || rels > 2)
        fail(path + ": implausible dims");
    expect_label(in, path, "seed");
    if (!(in >> model.seed)) fail(path + ": bad seed");
    expect_label(in, path, "penalty");
    if (!(in >> model.trained_params.p1 >> model.trained_params.p2))
        fail(path + ": bad penalty line");
    expect_label(in, path, "source_task");
    size_t task_count = 0;
    if (!(in >> task_count)) fail(path + ": bad source_task count");
    std::vector<int> required(task_count);
    for (size_t i = 0; i < task_count; ++i)
        if (!(in >> required[i])) fail(path + ": truncated source_task");
    model.source_task = Task(required, model.m);

    size_t nodes = static_cast<size_t>(model.m) + model.n;
    model.h0 = Matrix(static_cast<int>(nodes), model.d0);
    model.h0.a = read_doubles(in, path, "h0", nodes * model.d0);
    for (int r = 0; r < rels; ++r) {
        Matrix w(model.d0, model.dh);
        w.a = read_doubles(in, path, "w0_" + std::to_string(r),
                           static_cast<size_t>(model.d0) * model.dh);
        model.w0.push_back(std::move(w));
    }
    model.b1 = read_doubles(in, path, "b1", model.dh);
    model.bn_gamma = read_doubles(in, path, "bn_gamma", model.dh);
    model.bn_beta = read_doubles(in, path, "bn_beta", model.dh);
    model.bn_mean = read_doubles(in, path, "bn_mean", model.dh);
    model.bn_var = read_doubles(in, path, "bn_var", model.dh);
    for (int r = 0; r < rels; ++r)
        model.w1.push_back(read_doubles(in, path, "w1_" + std::to_string(r), model.dh));
    expect_label(in, path, "b2");
    if (!(in >> model.b2)) fail(path + ": bad b2");
    expect_label(in, path, "final_pi");
    size_t pi_count = 0;
    if (!(in >> pi_count)) fail(path + ": bad final_pi count");
    model.final_pi.resize(pi_count);
    for (size_t i = 0; i < pi_count; ++i)
        if (!(in >> model.final_pi[i])) fail(path + ": truncated final_pi");
    expect_label(in, path, "loss_history");
    size_t loss_count = 0;
    if (!(in >> loss_count)) fail(path + ": bad loss_history count");
    model.loss_history.resize(loss_count);
    for (size_t i = 0; i < loss_count; ++i)
        if (!(in >> model.loss_history[i])) fail(path + ": truncated loss_history");
    return model;
}

void export_embeddings(const std::string& path, const TrainedRelaxation& model) {
    std::ofstream out(path);
    if (!out) fail("cannot write embeddings file: " + path);
    out << "# node_id kind embedding[" << model.d0 << "]\n";
    for (int i = 0; i < model.m + model.n; ++i) {
        out << i << ' ' << (i < model.m ? "skill" : "expert");
        for (int j = 0; j < model.d0; ++j) out << ' ' << format_full(model.h0.at(i, j));
        out << '\n';
    }
    if (!out) fail("write failed: " + path);
}

} // namespace teamform
