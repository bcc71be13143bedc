#pragma once

#include <cstddef>
#include <vector>

#include "flows.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "preference.hpp"

namespace promethee {

/// Pairwise engine: evaluates the preference function on every ordered pair
/// of alternatives. Runtime is Theta(m * n^2) for m criteria; it exists as
/// the transparent baseline the sorting engine is checked against, and stays
/// practical up to a few tens of thousands of alternatives.
///
/// The self pair contributes zero (d = 0 <= q), so each sum simply runs over
/// every alternative in index order; the division by n-1 happens once per
/// flow after the sum. Criteria are independent, so they may be computed on
/// up to `workers` threads; results are identical for any worker count
/// because each task owns disjoint output slots and aggregation is serial.
[[nodiscard]] inline FlowResult compute_flows_pairwise(const DecisionMatrix& matrix,
                                                       std::size_t workers = 1) {
    const std::size_t n = matrix.alternative_count();
    const std::size_t m = matrix.criterion_count();

    FlowResult result;
    result.alternative_count = n;
    result.criterion_count = m;
    result.uni_plus.assign(n * m, 0.0);
    result.uni_minus.assign(n * m, 0.0);

    const double inv = 1.0 / static_cast<double>(n - 1);

    detail::for_each_index(m, workers, [&](std::size_t k) {
        const Criterion& c = matrix.criteria()[k];
        const std::vector<double> v = matrix.column(k);
        for (std::size_t i = 0; i < n; ++i) {
            double out = 0.0;
            double in = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                out += preference(c.kind, v[i] - v[j], c.q, c.p);
                in += preference(c.kind, v[j] - v[i], c.q, c.p);
            }
            result.uni_plus[i * m + k] = out * inv;
            result.uni_minus[i * m + k] = in * inv;
        }
    });

    detail::aggregate_flows(matrix, result);
    return result;
}

}  // namespace promethee
