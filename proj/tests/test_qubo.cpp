#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"
#include "teamform/qubo.hpp"

using namespace teamform;
using namespace testutil;

namespace {

/* Hand-built 1-skill / 1-expert LinearCost instance used by frozen checks:
   lambda = 50, kappa = 1, expert owns the single required skill. */
ProblemInstance tiny_linear() {
    ProblemInstance inst;
    inst.pool = ExpertPool(1, {{0}});
    inst.task = Task({0}, 1);
    inst.variant = Variant::LinearCost;
    inst.lambda = 50.0;
    inst.kappa = {1.0};
    return inst;
}

}  // namespace

TEST_SUITE_BEGIN("qubo");

TEST_CASE("c vector: lambda on required skills, -kappa on experts for LinearCost") {
    ProblemInstance inst;
    inst.pool = ExpertPool(3, {{0}, {1, 2}});
    inst.task = Task({0, 2}, 3);
    inst.variant = Variant::MaxKCover;
    inst.k = 1;
    CHECK(build_c_vector(inst) == std::vector<double>{50.0, 0.0, 50.0, 0.0, 0.0});
    inst.variant = Variant::LinearCost;
    inst.kappa = {3.0, 4.5};
    CHECK(build_c_vector(inst) == std::vector<double>{50.0, 0.0, 50.0, -3.0, -4.5});
}

TEST_CASE("coverage penalties: frozen 1x1 matrices") {
    ProblemInstance inst = tiny_linear();
    PenaltyParams p{2.0, 7.0};
    auto pen = build_coverage_penalties(inst, p);
    /* constraint h = x_0 - s_0, hvec = (-1, 1) */
    CHECK(pen.p1.at(0, 0) == doctest::Approx(-2.0));
    CHECK(pen.p1.at(1, 1) == doctest::Approx(2.0));
    CHECK(pen.p1.at(0, 1) == 0.0);
    CHECK(pen.p2.at(0, 0) == doctest::Approx(7.0));
    CHECK(pen.p2.at(1, 1) == doctest::Approx(7.0));
    CHECK(pen.p2.at(0, 1) == doctest::Approx(-7.0));
    CHECK(pen.p2.at(1, 0) == doctest::Approx(-7.0));
}

TEST_CASE("coverage penalties: expert with no skills leaves only the skill diagonal") {
    ProblemInstance inst;
    inst.pool = ExpertPool(2, {{}});
    inst.task = Task({1}, 2);
    inst.variant = Variant::LinearCost;
    inst.kappa = {1.0};
    PenaltyParams p{1.0, 5.0};
    auto pen = build_coverage_penalties(inst, p, /*required_only=*/true);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double want_p1 = (i == 1 && j == 1) ? -1.0 : 0.0;
            double want_p2 = (i == 1 && j == 1) ? 5.0 : 0.0;
            CHECK(pen.p1.at(i, j) == doctest::Approx(want_p1));
            CHECK(pen.p2.at(i, j) == doctest::Approx(want_p2));
        }
}

TEST_CASE("coverage penalty identity: yT(-P1+P2)y equals the scalar slack sum") {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = random_instance(rng, Variant::LinearCost, 6, 5);
        PenaltyParams p{uniform_range(rng, 0.1, 100.0), uniform_range(rng, 0.1, 100.0)};
        bool required_only = (trial % 2) == 0;
        auto pen = build_coverage_penalties(inst, p, required_only);
        for (int rep = 0; rep < 20; ++rep) {
            auto y = random_bits(rng, 11);
            double quad = 0.0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j)
                    quad += (pen.p2.at(i, j) - pen.p1.at(i, j)) * y[i] * y[j];
            /* slack_oracle's cardinality term is off for LinearCost instances */
            double scalar = slack_oracle(inst, p, y, required_only);
            CHECK(quad == doctest::Approx(scalar).epsilon(1e-9));
        }
    }
}

TEST_CASE("cardinality penalty: k = n with everyone hired is penalty-free") {
    ProblemInstance inst;
    inst.pool = ExpertPool(1, {{0}, {0}, {0}});
    inst.task = Task({0}, 1);
    inst.variant = Variant::MaxKCover;
    inst.k = 3;
    PenaltyParams p{4.0, 9.0};
    auto card = build_cardinality_penalty(inst, p);
    std::vector<uint8_t> y = {0, 1, 1, 1};
    double quad = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) quad += card.matrix.at(i, j) * y[i] * y[j];
    CHECK(quad + card.constant == doctest::Approx(0.0));
}

TEST_CASE("cardinality penalty: one-over-budget costs p1 + p2") {
    ProblemInstance inst;
    inst.pool = ExpertPool(1, {{0}, {0}});
    inst.task = Task({0}, 1);
    inst.variant = Variant::MaxKCover;
    inst.k = 1;
    PenaltyParams p{3.0, 11.0};
    auto card = build_cardinality_penalty(inst, p);
    std::vector<uint8_t> y = {0, 1, 1}; /* h = 1 - 2 = -1 -> p1 + p2 */
    double quad = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) quad += card.matrix.at(i, j) * y[i] * y[j];
    CHECK(quad + card.constant == doctest::Approx(14.0));
}

TEST_CASE("cardinality penalty identity on random teams") {
    Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + uniform_int(rng, 6);
        auto inst = random_instance(rng, Variant::MaxKCover, n, 4, 50.0, uniform_int(rng, n + 2));
        PenaltyParams p{uniform_range(rng, 0.1, 100.0), uniform_range(rng, 0.1, 100.0)};
        auto card = build_cardinality_penalty(inst, p);
        auto y = random_bits(rng, 4 + n);
        double quad = 0.0;
        for (int i = 0; i < 4 + n; ++i)
            for (int j = 0; j < 4 + n; ++j) quad += card.matrix.at(i, j) * y[i] * y[j];
        double z = 0.0;
        for (int i = 0; i < n; ++i) z += y[4 + i];
        double h = inst.k - z;
        CHECK(quad + card.constant == doctest::Approx(-p.p1 * h + p.p2 * h * h).epsilon(1e-9));
    }
}

TEST_CASE("graph objective matrix: quadratic form reproduces lambda*covered - pair costs") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = random_instance(rng, Variant::GraphCost, 6, 5);
        Matrix dhat = build_graph_objective_matrix(inst);
        for (int rep = 0; rep < 20; ++rep) {
            auto y = random_bits(rng, 11);
            double quad = 0.0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) quad += dhat.at(i, j) * y[i] * y[j];
            double want = 0.0;
            for (int j : inst.task.required) want += inst.lambda * y[j];
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j)
                    if (y[5 + i] && y[5 + j]) want -= inst.graph.at(i, j);
            CHECK(quad == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("build_q: frozen 1x1 LinearCost matrix") {
    ProblemInstance inst = tiny_linear();
    QuboMatrix q = build_q(inst, PenaltyParams{1.0, 10.0});
    /* -diag(50, -1) - diag(-1, 1) + 10*[[1,-1],[-1,1]] */
    CHECK(q.at(0, 0) == doctest::Approx(-39.0));
    CHECK(q.at(0, 1) == doctest::Approx(-10.0));
    CHECK(q.at(1, 0) == doctest::Approx(-10.0));
    CHECK(q.at(1, 1) == doctest::Approx(10.0));
    CHECK(q.constant == 0.0);
    /* hiring the expert and claiming the skill is the unique minimum */
    CHECK(energy(q, {0, 0}) == doctest::Approx(0.0));
    CHECK(energy(q, {1, 0}) == doctest::Approx(-39.0));
    CHECK(energy(q, {0, 1}) == doctest::Approx(10.0));
    CHECK(energy(q, {1, 1}) == doctest::Approx(-49.0));
}

TEST_CASE("build_q: frozen 1x1 MaxKCover matrix with stored constant") {
    ProblemInstance inst = tiny_linear();
    inst.variant = Variant::MaxKCover;
    inst.kappa.clear();
    inst.k = 1;
    QuboMatrix q = build_q(inst, PenaltyParams{1.0, 10.0});
    CHECK(q.at(0, 0) == doctest::Approx(-39.0));
    CHECK(q.at(0, 1) == doctest::Approx(-10.0));
    CHECK(q.at(1, 1) == doctest::Approx(0.0)); /* -0 + (-1+10) + (1 - 20 + 10) */
    CHECK(q.constant == doctest::Approx(9.0));
    CHECK(energy(q, {0, 0}) == doctest::Approx(9.0));
    CHECK(energy(q, {1, 0}) == doctest::Approx(-30.0));
    CHECK(energy(q, {0, 1}) == doctest::Approx(9.0));
    CHECK(energy(q, {1, 1}) == doctest::Approx(-50.0));
}

TEST_CASE("build_q rejects non-positive penalty parameters") {
    ProblemInstance inst = tiny_linear();
    CHECK_THROWS_AS(build_q(inst, PenaltyParams{0.0, 1.0}), Error);
    CHECK_THROWS_AS(build_q(inst, PenaltyParams{1.0, -2.0}), Error);
}

TEST_CASE("energy: exhaustive QUBO<->objective equivalence for every team") {
    Rng rng(24);
    for (Variant v : {Variant::MaxKCover, Variant::LinearCost, Variant::GraphCost}) {
        for (int trial = 0; trial < 12; ++trial) {
            const int n = 6, m = 5;
            auto inst = random_instance(rng, v, n, m, 50.0, 2);
            PenaltyParams p{uniform_range(rng, 0.5, 10.0), uniform_range(rng, 0.5, 100.0)};
            bool required_only = (trial % 2) == 0;
            QuboMatrix q = build_q(inst, p, required_only);
            for (uint32_t mask = 0; mask < (1u << n); ++mask) {
                Assignment x(n);
                for (int i = 0; i < n; ++i) x.x[i] = (mask >> i) & 1;
                std::vector<uint8_t> y = induced_skill_vector(inst, x);
                y.insert(y.end(), x.x.begin(), x.x.end());
                /* gain part excludes the MaxKCover sentinel; the cardinality
                   slack inside slack_oracle accounts for the bound instead */
                double finite_cost = 0.0;
                if (v == Variant::LinearCost) finite_cost = cost(inst, x);
                if (v == Variant::GraphCost) finite_cost = cost(inst, x);
                double gain = inst.lambda * coverage(inst.task, x, inst.pool) - finite_cost;
                double want = -gain + slack_oracle(inst, p, y, required_only);
                CHECK(energy(q, y) == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("energy: basis vectors read the diagonal, zero vector the constant") {
    Rng rng(25);
    auto inst = random_instance(rng, Variant::MaxKCover, 5, 4, 50.0, 2);
    QuboMatrix q = build_q(inst, PenaltyParams{1.0, 10.0});
    std::vector<uint8_t> zero(q.dim(), 0);
    CHECK(energy(q, zero) == doctest::Approx(q.constant));
    for (int i = 0; i < q.dim(); ++i) {
        auto y = zero;
        y[i] = 1;
        CHECK(energy(q, y) == doctest::Approx(q.at(i, i) + q.constant));
    }
}

TEST_CASE("energy matches the naive double-loop oracle on random vectors") {
    Rng rng(26);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = random_instance(rng, Variant::GraphCost, 6, 5);
        QuboMatrix q = build_q(inst, PenaltyParams{2.0, 30.0});
        auto y = random_bits(rng, q.dim());
        CHECK(energy(q, y) == doctest::Approx(energy_oracle(q, y)).epsilon(1e-12));
    }
}

TEST_CASE("energy validates its input") {
    ProblemInstance inst = tiny_linear();
    QuboMatrix q = build_q(inst, PenaltyParams{1.0, 10.0});
    CHECK_THROWS_AS(energy(q, {1}), Error);
    CHECK_THROWS_AS(energy(q, {1, 2}), Error);
}

TEST_CASE("build_q: symmetric by construction") {
    Rng rng(27);
    for (Variant v : {Variant::MaxKCover, Variant::LinearCost, Variant::GraphCost}) {
        auto inst = random_instance(rng, v, 6, 5);
        QuboMatrix q = build_q(inst, PenaltyParams{1.5, 22.0});
        for (int i = 0; i < q.dim(); ++i)
            for (int j = 0; j < q.dim(); ++j) CHECK(q.at(i, j) == q.at(j, i));
    }
}

TEST_CASE("build_q: empty task leaves the zero vector optimal at default penalties") {
    ProblemInstance inst;
    inst.pool = ExpertPool(3, {{0}, {1, 2}});
    inst.task = Task();
    inst.variant = Variant::LinearCost;
    inst.kappa = {1.0, 1.0};
    QuboMatrix q = build_q(inst, PenaltyParams{1.0, 10.0});
    std::vector<uint8_t> zero(q.dim(), 0);
    double at_zero = energy(q, zero);
    CHECK(at_zero == doctest::Approx(0.0));
    for (uint32_t mask = 1; mask < (1u << q.dim()); ++mask) {
        std::vector<uint8_t> y(q.dim());
        for (int i = 0; i < q.dim(); ++i) y[i] = (mask >> i) & 1;
        CHECK(energy(q, y) >= at_zero - 1e-12);
    }
}

TEST_CASE("decode_and_repair ignores skill bits and preserves the team") {
    ProblemInstance inst;
    inst.pool = ExpertPool(2, {{0}, {1}, {}});
    inst.task = Task({0, 1}, 2);
    inst.variant = Variant::LinearCost;
    inst.kappa = {1.0, 2.0, 3.0};
    std::vector<uint8_t> garbage_skills = {1, 1, 0, 1, 1};
    std::vector<uint8_t> clean_skills = {0, 0, 0, 1, 1};
    Assignment a = decode_and_repair(inst, garbage_skills);
    Assignment b = decode_and_repair(inst, clean_skills);
    CHECK(a.x == b.x);
    CHECK(a.x == std::vector<uint8_t>{0, 1, 1});
    CHECK(objective(inst, a) == doctest::Approx(50.0 - 5.0));
    CHECK_THROWS_AS(decode_and_repair(inst, {1, 0}), Error);
}

TEST_CASE("qubo file round trip is bit-faithful") {
    Rng rng(28);
    auto inst = random_instance(rng, Variant::GraphCost, 5, 4);
    QuboMatrix q = build_q(inst, PenaltyParams{0.3, 77.7});
    auto path = (std::filesystem::temp_directory_path() / "teamform_qubo_rt.txt").string();
    save_qubo(q, path);
    QuboMatrix back = load_qubo(path);
    CHECK(back.m == q.m);
    CHECK(back.n == q.n);
    CHECK(back.variant == q.variant);
    CHECK(back.constant == q.constant);
    REQUIRE(back.q.size() == q.q.size());
    for (size_t i = 0; i < q.q.size(); ++i) CHECK(back.q[i] == q.q[i]);
    std::filesystem::remove(path);
}

TEST_CASE("load_qubo rejects malformed files") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path();
    auto write = [&](const std::string& name, const std::string& text) {
        auto p = (dir / name).string();
        std::FILE* f = std::fopen(p.c_str(), "w");
        REQUIRE(f);
        std::fputs(text.c_str(), f);
        std::fclose(f);
        return p;
    };
    CHECK_THROWS_AS(load_qubo((dir / "teamform_missing.txt").string()), Error);
    CHECK_THROWS_AS(load_qubo(write("teamform_bad1.txt", "1 zebra linear\n")), Error);
    CHECK_THROWS_AS(load_qubo(write("teamform_bad2.txt", "1 1 linear\n1 2\n3 4\n")), Error);
    CHECK_THROWS_AS(load_qubo(write("teamform_bad3.txt", "1 1 linear\n1 2\n2 4\n")), Error);
    CHECK_THROWS_AS(
        load_qubo(write("teamform_bad4.txt", "1 1 linear\n1 2\n3 4\nconstant 0\n")), Error);
    CHECK_NOTHROW(load_qubo(write("teamform_ok.txt", "1 1 linear\n1 2\n2 4\nconstant 0.5\n")));
    for (const char* n : {"teamform_bad1.txt", "teamform_bad2.txt", "teamform_bad3.txt",
                          "teamform_bad4.txt", "teamform_ok.txt"})
        fs::remove(dir / n);
}

TEST_SUITE_END();
