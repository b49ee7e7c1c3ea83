#pragma once

// Neural relaxation solver: a two-layer relational graph convolution over the
// skill-expert graph, trained unsupervised against the relaxed QUBO loss
//   L(pi) = piT Q pi + alpha * sum_i pi_i (1 - pi_i),
// then rounded and repaired into a team. Trained models can be reused on new
// tasks over the same pool: one inference forward pass yields an assignment
// (transfer by task similarity or by random sampling).
//
// Architecture (nodes = m skills then n experts, N = m + n):
//   relations   r=0: skill-expert membership edges (unweighted);
//               r=1: expert-expert edges weighted by coordination distance
//                    (GraphCost instances only)
//   aggregation M_r = I + A_r   (each node hears itself plus its neighbors)
//   layer 1     Z1 = sum_r M_r H0 W0_r + b1,  batchnorm, ReLU, dropout
//   layer 2     z2 = sum_r M_r A1 w1_r + b2,  pi = sigmoid(z2)
// All parameters train by full-batch gradient descent, H0 included. Batchnorm
// normalizes each hidden feature over the N nodes (biased variance,
// eps 1e-5); inference uses running statistics (momentum 0.1).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teamform/qubo.hpp"
#include "teamform/solvers.hpp"

namespace teamform {

struct ProblemGraph {
    int m = 0;
    int n = 0;
    std::vector<Matrix> adj; // one (m+n)x(m+n) symmetric adjacency per relation

    int nodes() const { return m + n; }
    int relations() const { return static_cast<int>(adj.size()); }
};

// Skill-expert edges mirror the membership matrix exactly; GraphCost adds an
// expert-expert relation holding every strictly positive distance.
ProblemGraph build_graph(const ProblemInstance& inst);

struct GnnConfig {
    int d0 = 0; // embedding size; 0 means derive (m+n)/2, floored at 1
    int dh = 0; // hidden size;    0 means derive (m+n)/4, floored at 1
    double dropout = 0.2;
    double alpha = 1.5; // binary-regularization weight
    double beta = 5e-3; // learning rate
    int max_epochs = 100000;
    double early_stop_tol = 1e-3;
    int early_stop_patience = 3000;
    uint64_t seed = 0;
    // Train against the QUBO whose coverage constraints are pruned to the
    // task's required skills. Slots outside the task then carry no penalty,
    // which keeps their slack from rewarding over-hiring during training.
    bool required_only = false;

    void validate() const;
};

// Published per-variant hyperparameters plus the size rules above.
GnnConfig default_gnn_config(Variant v, int m, int n);

struct TrainedRelaxation {
    Variant variant = Variant::MaxKCover;
    int m = 0, n = 0, d0 = 0, dh = 0;
    uint64_t seed = 0;
    PenaltyParams trained_params;
    Task source_task;

    Matrix h0;                           // (m+n) x d0 input embeddings
    std::vector<Matrix> w0;              // per relation, d0 x dh
    std::vector<double> b1;              // dh
    std::vector<double> bn_gamma, bn_beta;
    std::vector<double> bn_mean, bn_var; // running statistics for inference
    std::vector<std::vector<double>> w1; // per relation, dh (scalar head)
    double b2 = 0.0;

    std::vector<double> final_pi;     // inference probabilities after training
    std::vector<double> loss_history; // one entry per training epoch

    int relations() const { return static_cast<int>(w0.size()); }
};

// Everything the backward pass needs from one forward evaluation. `agg_in`
// and `agg_hidden` are the per-relation aggregated layer inputs; `batch_mean`
// and `batch_var` are filled only when batch statistics were used.
struct ForwardTrace {
    std::vector<Matrix> agg_in; // per relation: (I + A_r) H0
    Matrix z1;                  // pre-batchnorm
    std::vector<double> batch_mean, batch_var;
    bool used_batch_stats = false;
    Matrix xhat;                // normalized z1
    Matrix a1;                  // after ReLU and dropout
    Matrix dropout_mask;        // scaled inverted-dropout mask (all 1 if off)
    std::vector<Matrix> agg_hidden; // per relation: (I + A_r) A1
    std::vector<double> z2;
    std::vector<double> pi;
};

// One forward evaluation. `use_batch_stats` selects between batch statistics
// (training) and the stored running statistics (inference / frozen-batchnorm
// gradient checks). Dropout fires only when `rng` is given and dropout > 0.
ForwardTrace forward_trace(const TrainedRelaxation& model, const ProblemGraph& graph,
                           bool use_batch_stats, double dropout_p, Rng* rng);

// Deterministic inference pass: running stats, no dropout.
std::vector<double> forward(const TrainedRelaxation& model, const ProblemGraph& graph);

// The relaxed QUBO training loss (constant term excluded).
inline double gnn_loss(const std::vector<double>& pi, const QuboMatrix& qubo, double alpha) {
    return relaxed_loss(qubo, pi, alpha);
}

struct Gradients {
    Matrix h0;
    std::vector<Matrix> w0;
    std::vector<double> b1, bn_gamma, bn_beta;
    std::vector<std::vector<double>> w1;
    double b2 = 0.0;
};

// Full backpropagation through loss, sigmoid, both convolutions and batchnorm
// (batch or frozen statistics, matching how the trace was produced).
Gradients backward(const TrainedRelaxation& model, const ProblemGraph& graph,
                   const ForwardTrace& trace, const QuboMatrix& qubo, double alpha);

// Seeded initialization + full-batch gradient descent with early stopping
// (stop after `early_stop_patience` consecutive epochs improving the best
// loss by less than `early_stop_tol`). Aborts with diagnostics if the loss
// goes non-finite. The returned model carries its inference probabilities.
TrainedRelaxation train(const ProblemInstance& inst, const PenaltyParams& params,
                        const GnnConfig& config);

// Trains one model per (p1, p2) grid point and keeps the one whose rounded,
// repaired team scores the highest F; exact ties go to the smallest (p1, p2)
// lexicographically. Grid values must lie within [0.1, 100].
std::pair<PenaltyParams, TrainedRelaxation> grid_search(const ProblemInstance& inst,
                                                        const GnnConfig& config,
                                                        const std::vector<double>& p1_grid,
                                                        const std::vector<double>& p2_grid);

// Index of the model whose source task is most Jaccard-similar to `task`
// (ties to the first).
int pick_most_similar(const std::vector<TrainedRelaxation>& models, const Task& task);

// Reuse a trained model on a new task: pick by task similarity, run one
// inference pass, round at 0.5, repair, score against `inst`.
SolveResult transfer_sim(const std::vector<TrainedRelaxation>& models,
                         const ProblemInstance& inst);

// Same, but over a seeded sample of (up to) 3 models, keeping the best F.
SolveResult transfer_rand(const std::vector<TrainedRelaxation>& models,
                          const ProblemInstance& inst, uint64_t seed);

// Text container with shapes, seed, source task and every tensor at full
// precision; load(save(m)) reproduces the model bit for bit.
void save_model(const std::string& path, const TrainedRelaxation& model);
TrainedRelaxation load_model(const std::string& path);

// Per-node embedding rows "node_id kind <d0 floats>" for external tooling.
void export_embeddings(const std::string& path, const TrainedRelaxation& model);

} // namespace teamform
