#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <promethee/pairwise_engine.hpp>
#include <promethee/sorting_engine.hpp>

#include "support.hpp"

using namespace promethee;
using Catch::Matchers::WithinAbs;

TEST_CASE("sorting engine reproduces the hand-computed sample flows", "[sorting]") {
    const DecisionMatrix matrix = testsupport::sample_matrix();
    const FlowResult flows = compute_flows_sorting(matrix);
    const auto& expected = testsupport::sample_linear_expected();

    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            CAPTURE(i, k);
            CHECK(flows.uni_plus_at(i, k) == expected.uni_plus[i * 3 + k]);
            CHECK(flows.uni_minus_at(i, k) == expected.uni_minus[i * 3 + k]);
        }
    }
    for (std::size_t i = 0; i < 5; ++i) {
        CAPTURE(i);
        CHECK_THAT(flows.phi_plus[i], WithinAbs(expected.phi_plus[i], 1e-14));
        CHECK_THAT(flows.phi_minus[i], WithinAbs(expected.phi_minus[i], 1e-14));
        CHECK_THAT(flows.phi[i], WithinAbs(expected.phi[i], 1e-14));
    }
}

TEST_CASE("sorting engine matches the level-shape expectations", "[sorting]") {
    const DecisionMatrix matrix = testsupport::sample_matrix(PreferenceKind::level);
    const FlowResult flows = compute_flows_sorting(matrix);
    const auto& expected = testsupport::sample_level_expected();

    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(flows.uni_plus_at(3, k) == expected.a4_uni_plus[k]);
        CHECK(flows.uni_minus_at(3, k) == expected.a4_uni_minus[k]);
    }
    for (std::size_t i = 0; i < 5; ++i) {
        CAPTURE(i);
        CHECK_THAT(flows.phi_plus[i], WithinAbs(expected.phi_plus[i], 1e-14));
        CHECK_THAT(flows.phi_minus[i], WithinAbs(expected.phi_minus[i], 1e-14));
        CHECK_THAT(flows.phi[i], WithinAbs(expected.phi[i], 1e-14));
    }
}

TEST_CASE("both engines agree on randomized instances", "[sorting]") {
    std::mt19937_64 rng(987654321);
    for (int round = 0; round < 60; ++round) {
        const DecisionMatrix matrix = testsupport::random_instance(rng, 128);
        const FlowResult a = compute_flows_pairwise(matrix);
        const FlowResult b = compute_flows_sorting(matrix);
        CAPTURE(round, matrix.alternative_count(), matrix.criterion_count());
        CHECK(testsupport::max_flow_diff(a, b) <= 1e-9);
    }
}

TEST_CASE("window trace walks the documented cursor positions", "[sorting]") {
    // Column 5,6,7,7,10 with q=1, p=3: sorted order is the identity, so slot
    // t is alternative t. Expected per slot: the window [lambda, upsilon).
    const std::vector<double> column{5, 6, 7, 7, 10};
    const ColumnScanTrace trace = scan_column_trace(column, PreferenceKind::linear, 1.0, 3.0);

    REQUIRE(trace.order == std::vector<std::size_t>{0, 1, 2, 3, 4});
    REQUIRE(trace.steps.size() == 5);

    const std::size_t expected_lambda[] = {0, 0, 0, 0, 2};
    const std::size_t expected_upsilon[] = {0, 1, 2, 2, 4};
    for (std::size_t t = 0; t < 5; ++t) {
        CAPTURE(t);
        CHECK(trace.steps[t].lambda == expected_lambda[t]);
        CHECK(trace.steps[t].upsilon == expected_upsilon[t]);
    }

    CHECK(trace.flow == std::vector<double>{0.0, 0.0, 0.125, 0.125, 1.0});
}

TEST_CASE("the cursor can empty the window entirely", "[sorting]") {
    // Values so far apart that each new one expels everything seen before.
    const std::vector<double> column{0, 10, 20};
    const ColumnScanTrace trace = scan_column_trace(column, PreferenceKind::linear, 1.0, 2.0);

    REQUIRE(trace.steps.size() == 3);
    CHECK(trace.steps[1].lambda == 1);
    CHECK(trace.steps[1].upsilon == 1);
    CHECK(trace.steps[1].window_sum == 0.0);
    CHECK(trace.steps[2].lambda == 2);
    CHECK(trace.steps[2].upsilon == 2);

    CHECK(trace.flow == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("degenerate thresholds agree with the pairwise engine exactly", "[sorting]") {
    std::mt19937_64 rng(1357);
    for (const double q : {0.0, 0.25}) {
        Criterion c;
        c.name = "c1";
        c.q = q;
        c.p = q;  // step function
        for (int round = 0; round < 10; ++round) {
            const std::size_t n = 2 + rng() % 40;
            std::vector<double> values(n);
            std::vector<std::string> ids(n);
            for (std::size_t i = 0; i < n; ++i) {
                values[i] = std::floor((static_cast<double>(rng() >> 11) * 0x1.0p-53) * 8.0) / 8.0;
                ids[i] = "a" + std::to_string(i + 1);
            }
            for (const PreferenceKind kind : {PreferenceKind::linear, PreferenceKind::level}) {
                c.kind = kind;
                const DecisionMatrix matrix(ids, {c}, values);
                const FlowResult a = compute_flows_pairwise(matrix);
                const FlowResult b = compute_flows_sorting(matrix);
                CAPTURE(q, static_cast<int>(kind), n);
                // A step preference only ever contributes whole units, so the
                // engines must agree bit for bit.
                CHECK(testsupport::max_flow_diff(a, b) == 0.0);
            }
        }
    }
}

TEST_CASE("identical alternatives get identical flows, bit for bit", "[sorting]") {
    std::mt19937_64 rng(24680);
    for (int round = 0; round < 20; ++round) {
        const DecisionMatrix matrix = testsupport::random_instance(rng, 64);
        const std::size_t n = matrix.alternative_count();
        const std::size_t m = matrix.criterion_count();
        const FlowResult flows = compute_flows_sorting(matrix);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                bool same = true;
                for (std::size_t k = 0; k < m; ++k) {
                    same = same && matrix.value(i, k) == matrix.value(j, k);
                }
                if (!same) continue;
                CAPTURE(round, i, j);
                for (std::size_t k = 0; k < m; ++k) {
                    CHECK(flows.uni_plus_at(i, k) == flows.uni_plus_at(j, k));
                    CHECK(flows.uni_minus_at(i, k) == flows.uni_minus_at(j, k));
                }
                CHECK(flows.phi[i] == flows.phi[j]);
            }
        }
    }
}

TEST_CASE("worker count does not change sorting results", "[sorting]") {
    std::mt19937_64 rng(11);
    const DecisionMatrix matrix = testsupport::random_instance(rng, 96);
    const FlowResult solo = compute_flows_sorting(matrix, 1);
    const FlowResult pooled = compute_flows_sorting(matrix, 4);
    CHECK(testsupport::max_flow_diff(solo, pooled) == 0.0);
}

TEST_CASE("column trace requires at least two values", "[sorting]") {
    CHECK_THROWS_AS(scan_column_trace({1.0}, PreferenceKind::linear, 0.0, 1.0),
                    ValidationError);
}

TEST_CASE("engines agree on a larger instance", "[sorting]") {
    GenerateSpec spec;
    spec.alternatives = 5000;
    spec.criteria = 2;
    spec.seed = 99;
    spec.q = 0.01;
    spec.p = 0.05;
    const DecisionMatrix matrix = generate_matrix(spec);
    const FlowResult a = compute_flows_pairwise(matrix);
    const FlowResult b = compute_flows_sorting(matrix);
    CHECK(testsupport::max_flow_diff(a, b) <= 1e-9);
}
