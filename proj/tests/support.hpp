#pragma once

// Shared fixtures and helpers for the test suite.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <promethee/promethee.hpp>

namespace testsupport {

using namespace promethee;

/// The bundled 5-alternative, 3-criterion example (data/sample.csv): all
/// criteria maximized, q=1, p=3, equal weights.
inline DecisionMatrix sample_matrix(PreferenceKind kind = PreferenceKind::linear) {
    std::vector<std::string> ids{"a1", "a2", "a3", "a4", "a5"};
    std::vector<Criterion> criteria(3);
    for (std::size_t k = 0; k < 3; ++k) {
        criteria[k].name = "c" + std::to_string(k + 1);
        criteria[k].direction = Direction::maximize;
        criteria[k].kind = kind;
        criteria[k].q = 1.0;
        criteria[k].p = 3.0;
        criteria[k].weight = 1.0;
    }
    std::vector<double> values{
        5, 6, 9,   // a1
        6, 4, 10,  // a2
        7, 9, 8,   // a3
        7, 8, 8,   // a4
        10, 7, 7,  // a5
    };
    return DecisionMatrix(std::move(ids), std::move(criteria), std::move(values));
}

/// Expected flows for the sample matrix, worked out by hand from the
/// pairwise definition (all values are exact eighths/thirds, so the doubles
/// below are exact except for the aggregate divisions by 3).
struct SampleExpected {
    std::vector<double> uni_plus;   // row-major 5x3
    std::vector<double> uni_minus;  // row-major 5x3
    std::vector<double> phi_plus;
    std::vector<double> phi_minus;
    std::vector<double> phi;
};

inline const SampleExpected& sample_linear_expected() {
    static const SampleExpected e{
        {
            0.0, 0.125, 0.125,    // a1
            0.0, 0.0, 0.5,        // a2
            0.125, 0.625, 0.0,    // a3
            0.125, 0.375, 0.0,    // a4
            1.0, 0.25, 0.0,       // a5
        },
        {
            0.5, 0.375, 0.0,      // a1
            0.25, 0.875, 0.0,     // a2
            0.25, 0.0, 0.125,     // a3
            0.25, 0.0, 0.125,     // a4
            0.0, 0.125, 0.375,    // a5
        },
        {1.0 / 12, 1.0 / 6, 0.25, 1.0 / 6, 5.0 / 12},
        {7.0 / 24, 0.375, 0.125, 0.125, 1.0 / 6},
        {-5.0 / 24, -5.0 / 24, 0.125, 1.0 / 24, 0.25},
    };
    return e;
}

/// Level-shape expectations for the same matrix: the aggregates for all five
/// alternatives plus the full unicriterion row of a4.
struct SampleLevelExpected {
    std::vector<double> phi_plus;
    std::vector<double> phi_minus;
    std::vector<double> phi;
    std::vector<double> a4_uni_plus;
    std::vector<double> a4_uni_minus;
};

inline const SampleLevelExpected& sample_level_expected() {
    static const SampleLevelExpected e{
        {1.0 / 12, 0.125, 5.0 / 24, 1.0 / 6, 7.0 / 24},
        {0.25, 1.0 / 3, 1.0 / 12, 1.0 / 12, 0.125},
        {-1.0 / 6, -5.0 / 24, 0.125, 1.0 / 12, 1.0 / 6},
        {0.125, 0.375, 0.0},
        {0.125, 0.0, 0.125},
    };
    return e;
}

/// Largest absolute difference across all six flow fields (unicriterion
/// leaving/entering/net and the three aggregates).
inline double max_flow_diff(const FlowResult& a, const FlowResult& b) {
    double worst = 0.0;
    const auto track = [&](const std::vector<double>& x, const std::vector<double>& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst = std::max(worst, std::fabs(x[i] - y[i]));
        }
    };
    track(a.uni_plus, b.uni_plus);
    track(a.uni_minus, b.uni_minus);
    std::vector<double> net_a(a.uni_plus.size());
    std::vector<double> net_b(b.uni_plus.size());
    for (std::size_t i = 0; i < net_a.size(); ++i) {
        net_a[i] = a.uni_plus[i] - a.uni_minus[i];
        net_b[i] = b.uni_plus[i] - b.uni_minus[i];
    }
    track(net_a, net_b);
    track(a.phi_plus, b.phi_plus);
    track(a.phi_minus, b.phi_minus);
    track(a.phi, b.phi);
    return worst;
}

/// Build a randomized instance exercising the awkward corners: zero and
/// degenerate thresholds, duplicated values and whole duplicated rows, both
/// function shapes, mixed directions, uneven weights, and value scales of 1
/// and 1000.
inline DecisionMatrix random_instance(std::mt19937_64& rng, std::size_t max_n = 512) {
    std::uniform_int_distribution<std::size_t> n_dist(2, max_n);
    std::uniform_int_distribution<std::size_t> m_dist(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::size_t n = n_dist(rng);
    const std::size_t m = m_dist(rng);
    const double scale = (rng() % 2 == 0) ? 1.0 : 1000.0;

    std::vector<Criterion> criteria(m);
    for (std::size_t k = 0; k < m; ++k) {
        Criterion& c = criteria[k];
        c.name = "c" + std::to_string(k + 1);
        c.direction = (rng() % 2 == 0) ? Direction::maximize : Direction::minimize;
        c.kind = (rng() % 2 == 0) ? PreferenceKind::linear : PreferenceKind::level;
        c.weight = 0.05 + 3.0 * unit(rng);

        switch (rng() % 4) {
            case 0:  // q = 0, positive band
                c.q = 0.0;
                c.p = (0.02 + 0.48 * unit(rng)) * scale;
                break;
            case 1:  // degenerate step, possibly at zero
                c.q = (rng() % 2 == 0) ? 0.0 : 0.3 * unit(rng) * scale;
                c.p = c.q;
                break;
            default:  // generic 0 < q < p with a band wide enough to be stable
                c.q = (0.01 + 0.29 * unit(rng)) * scale;
                c.p = c.q + (0.02 + 0.48 * unit(rng)) * scale;
                break;
        }
    }

    std::vector<double> values(n * m);
    const bool quantize = rng() % 2 == 0;
    for (double& v : values) {
        v = unit(rng) * scale;
        if (quantize) v = std::floor(v * 16.0 / scale) * (scale / 16.0);  // force ties
    }
    // Duplicate a few whole rows so identical alternatives appear.
    if (n >= 3 && rng() % 2 == 0) {
        const std::size_t copies = 1 + rng() % 2;
        for (std::size_t c = 0; c < copies; ++c) {
            const std::size_t src = rng() % n;
            const std::size_t dst = rng() % n;
            if (src == dst) continue;
            std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(src * m), m,
                        values.begin() + static_cast<std::ptrdiff_t>(dst * m));
        }
    }

    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "a" + std::to_string(i + 1);
    return DecisionMatrix(std::move(ids), std::move(criteria), std::move(values));
}

}  // namespace testsupport
