#include "teamform/qubo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace teamform {

namespace {

void check_params(const PenaltyParams& params) {
    if (!(params.p1 > 0.0) || !std::isfinite(params.p1) || !(params.p2 > 0.0) ||
        !std::isfinite(params.p2))
        fail("penalty params: p1 and p2 must be finite and > 0");
}

/* Skills whose coverage constraint is materialized. */
std::vector<int> constraint_skills(const ProblemInstance& inst, bool required_only) {
    if (required_only) return inst.task.required;
    std::vector<int> all(inst.num_skills());
    for (int j = 0; j < inst.num_skills(); ++j) all[j] = j;
    return all;
}

}  // namespace

std::vector<double> build_c_vector(const ProblemInstance& inst) {
    inst.validate();
    std::vector<double> c(inst.num_skills() + inst.num_experts(), 0.0);
    for (int j : inst.task.required) c[j] = inst.lambda;
    if (inst.variant == Variant::LinearCost)
        for (int i = 0; i < inst.num_experts(); ++i) c[inst.num_skills() + i] = -inst.kappa[i];
    return c;
}

CoveragePenalties build_coverage_penalties(const ProblemInstance& inst, const PenaltyParams& params,
                                           bool required_only) {
    inst.validate();
    check_params(params);
    const int m = inst.num_skills(), n = inst.num_experts(), dim = m + n;
    CoveragePenalties out{Matrix(dim, dim), Matrix(dim, dim)};
    /* Constraint j has coefficient vector hvec_j = (-e_j ‖ E-column j). */
    for (int j : constraint_skills(inst, required_only)) {
        out.p1.at(j, j) += -params.p1;
        out.p2.at(j, j) += params.p2;
        for (int i = 0; i < n; ++i) {
            if (!inst.pool.has_skill(i, j)) continue;
            out.p1.at(m + i, m + i) += params.p1;
            out.p2.at(j, m + i) += -params.p2;
            out.p2.at(m + i, j) += -params.p2;
            out.p2.at(m + i, m + i) += params.p2;
            for (int i2 = i + 1; i2 < n; ++i2) {
                if (!inst.pool.has_skill(i2, j)) continue;
                out.p2.at(m + i, m + i2) += params.p2;
                out.p2.at(m + i2, m + i) += params.p2;
            }
        }
    }
    return out;
}

CardinalityPenalty build_cardinality_penalty(const ProblemInstance& inst,
                                             const PenaltyParams& params) {
    inst.validate();
    check_params(params);
    if (inst.variant != Variant::MaxKCover)
        fail("cardinality penalty only applies to the MaxKCover variant");
    const int m = inst.num_skills(), n = inst.num_experts(), dim = m + n;
    CardinalityPenalty out{Matrix(dim, dim), 0.0};
    /* -p1 (k - z) + p2 (k - z)^2 expanded over binary x (z = sum x_i):
       expert diagonal p1 - 2 k p2 + p2, expert off-diagonal p2 (the ones
       block contributes the diagonal p2 too since x_i^2 = x_i), plus the
       y-free remainder p2 k^2 - p1 k. */
    for (int i = 0; i < n; ++i) {
        out.matrix.at(m + i, m + i) = params.p1 - 2.0 * inst.k * params.p2 + params.p2;
        for (int i2 = i + 1; i2 < n; ++i2) {
            out.matrix.at(m + i, m + i2) = params.p2;
            out.matrix.at(m + i2, m + i) = params.p2;
        }
    }
    out.constant = params.p2 * inst.k * inst.k - params.p1 * inst.k;
    return out;
}

Matrix build_graph_objective_matrix(const ProblemInstance& inst) {
    inst.validate();
    if (inst.variant != Variant::GraphCost)
        fail("graph objective matrix only applies to the GraphCost variant");
    const int m = inst.num_skills(), n = inst.num_experts(), dim = m + n;
    Matrix dhat(dim, dim);
    std::vector<double> c = build_c_vector(inst);
    for (int i = 0; i < dim; ++i) dhat.at(i, i) = c[i];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            dhat.at(m + i, m + j) = -0.5 * inst.graph.at(i, j);
            dhat.at(m + j, m + i) = -0.5 * inst.graph.at(i, j);
        }
    return dhat;
}

QuboMatrix build_q(const ProblemInstance& inst, const PenaltyParams& params, bool required_only) {
    inst.validate();
    check_params(params);
    const int m = inst.num_skills(), n = inst.num_experts(), dim = m + n;
    QuboMatrix qubo(m, n, inst.variant);

    if (inst.variant == Variant::GraphCost) {
        Matrix dhat = build_graph_objective_matrix(inst);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) qubo.at(i, j) = -dhat.at(i, j);
    } else {
        std::vector<double> c = build_c_vector(inst);
        for (int i = 0; i < dim; ++i) qubo.at(i, i) = -c[i];
    }

    CoveragePenalties cov = build_coverage_penalties(inst, params, required_only);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) qubo.at(i, j) += cov.p2.at(i, j) - cov.p1.at(i, j);

    if (inst.variant == Variant::MaxKCover) {
        CardinalityPenalty card = build_cardinality_penalty(inst, params);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) qubo.at(i, j) += card.matrix.at(i, j);
        qubo.constant = card.constant;
    }
    return qubo;
}

double energy(const QuboMatrix& qubo, const std::vector<uint8_t>& y) {
    const int dim = qubo.dim();
    if (static_cast<int>(y.size()) != dim) fail("energy: y length does not match qubo dimension");
    for (uint8_t b : y)
        if (b > 1) fail("energy: y entries must be 0 or 1");
    double e = qubo.constant;
    for (int i = 0; i < dim; ++i) {
        if (!y[i]) continue;
        e += qubo.at(i, i);
        for (int j = i + 1; j < dim; ++j)
            if (y[j]) e += qubo.at(i, j) + qubo.at(j, i);
    }
    return e;
}

Assignment decode_and_repair(const ProblemInstance& inst, const std::vector<uint8_t>& y) {
    const int m = inst.num_skills(), n = inst.num_experts();
    if (static_cast<int>(y.size()) != m + n)
        fail("decode_and_repair: y length does not match instance dimensions");
    Assignment x(n);
    for (int i = 0; i < n; ++i) x.x[i] = y[m + i] ? 1 : 0;
    return x;
}

void save_qubo(const QuboMatrix& qubo, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("save_qubo: cannot open '" + path + "' for writing");
    out << qubo.m << ' ' << qubo.n << ' ' << variant_name(qubo.variant) << '\n';
    for (int i = 0; i < qubo.dim(); ++i) {
        for (int j = 0; j < qubo.dim(); ++j) {
            if (j) out << ' ';
            out << format_full(qubo.at(i, j));
        }
        out << '\n';
    }
    out << "constant " << format_full(qubo.constant) << '\n';
    if (!out) fail("save_qubo: write to '" + path + "' failed");
}

QuboMatrix load_qubo(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("load_qubo: cannot open '" + path + "'");
    int m = 0, n = 0;
    std::string variant_token;
    if (!(in >> m >> n >> variant_token)) fail("load_qubo: malformed header in '" + path + "'");
    if (m < 0 || n < 0 || m + n <= 0) fail("load_qubo: invalid dimensions in '" + path + "'");
    QuboMatrix qubo(m, n, variant_from_name(variant_token));
    const int dim = qubo.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (!(in >> qubo.at(i, j)))
                fail("load_qubo: missing matrix entry (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") in '" + path + "'");
    std::string label;
    if (!(in >> label) || label != "constant" || !(in >> qubo.constant))
        fail("load_qubo: missing 'constant <value>' trailer in '" + path + "'");
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (qubo.at(i, j) != qubo.at(j, i)) fail("load_qubo: matrix in '" + path + "' is not symmetric");
    return qubo;
}

}  // namespace teamform
