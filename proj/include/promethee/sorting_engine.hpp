#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "flows.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "preference.hpp"

namespace promethee {

/// One step of the sorted window scan, reported after the window for the
/// alternative at sorted slot `position` has been settled. Together with the
/// sort permutation this fully describes the partition of the already-seen
/// alternatives: slots [0, lambda) fully dominate by more than p ("left" of
/// the window, each contributing a full preference unit), slots
/// [lambda, upsilon) are inside the window, later slots are too close or
/// better ("right", contributing nothing).
struct ScanStep {
    std::size_t position;        ///< slot in the sorted column
    std::size_t original_index;  ///< row in the decision matrix
    std::size_t lambda;          ///< first slot not expelled from the window
    std::size_t upsilon;         ///< one past the last slot inside the window
    double window_sum;           ///< running sum of values inside the window
    double flow;                 ///< leaving flow of this alternative
};

namespace detail {

struct NoScanObserver {
    void operator()(const ScanStep&) const noexcept {}
};

/// Core one-pass window scan over a column already sorted ascending.
///
/// `sv[t]` is the value at sorted slot t and `order[t]` the matrix row it
/// came from. For the alternative at slot t the scan maintains two cursors:
/// lambda (slots before it lie more than p below sv[t]) and upsilon (slots
/// before it lie at least q below sv[t] for the linear shape, strictly more
/// than q for the level shape), plus the running sum S of window values.
/// Both cursors only ever move forward, so the whole pass costs O(n) after
/// sorting. The flow then falls out of the window statistics alone:
///
///   linear:  (lambda + (|W|*(sv[t]-q) - S) / (p-q)) / (n-1)
///   level:   (lambda + |W|/2) / (n-1)
///
/// With p == q both shapes collapse to a step at q: everything strictly
/// beyond q has already been expelled past lambda, whatever remains admitted
/// contributes zero, and the flow is lambda/(n-1).
///
/// Comparisons are made on the same rounded differences sv[t]-sv[x] the
/// pairwise engine evaluates, so both engines agree on which side of a
/// threshold every pair falls, including ties at q or p exactly.
///
/// Equal sorted values get their flow copied bit-for-bit from the previous
/// slot; the cursor loops would not move for them anyway.
///
/// The running sum is rebuilt from the window every 2^16 increments, or
/// sooner when |S| grows past 2^40 * epsilon * n and at least |W| increments
/// have happened since the last rebuild (so a rebuild's O(|W|) cost is always
/// amortized and the pass stays linear).
template <typename Observer>
inline void scan_sorted_column(const std::vector<double>& sv,
                               const std::vector<std::size_t>& order,
                               PreferenceKind kind, double q, double p,
                               std::vector<double>& flow_by_row,
                               Observer&& observe) {
    const std::size_t n = sv.size();
    const bool level = kind == PreferenceKind::level;
    const bool degenerate = p == q;
    const double inv = 1.0 / static_cast<double>(n - 1);

    constexpr std::uint32_t rebuild_period = 1u << 16;
    // 2^40 * machine epsilon * n, with epsilon = 2^-52
    const double drift_limit = std::ldexp(static_cast<double>(n), 40 - 52);

    std::size_t lambda = 0;
    std::size_t upsilon = 0;
    double window_sum = 0.0;
    std::uint32_t updates = 0;

    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t row = order[t];
        const double vt = sv[t];

        if (t > 0 && sv[t] == sv[t - 1]) {
            flow_by_row[row] = flow_by_row[order[t - 1]];
            observe(ScanStep{t, row, lambda, upsilon, window_sum, flow_by_row[row]});
            continue;
        }

        // Expel slots that fell more than p below the current value. A slot
        // can leave the window (then its value leaves the sum) or jump
        // straight past it when the cursor overtakes upsilon.
        while (lambda < t && vt - sv[lambda] > p) {
            if (lambda < upsilon) {
                window_sum -= sv[lambda];
                ++updates;
            }
            ++lambda;
        }
        if (lambda >= upsilon) {
            upsilon = lambda;
            window_sum = 0.0;  // empty window: clear accumulated rounding
        }

        // Admit slots that are now within the window band below the current
        // value. The level shape excludes differences equal to q.
        if (level) {
            while (upsilon < t && vt - sv[upsilon] > q) {
                window_sum += sv[upsilon];
                ++updates;
                ++upsilon;
            }
        } else {
            while (upsilon < t && vt - sv[upsilon] >= q) {
                window_sum += sv[upsilon];
                ++updates;
                ++upsilon;
            }
        }

        const std::size_t card_w = upsilon - lambda;
        if (updates >= rebuild_period ||
            (std::fabs(window_sum) > drift_limit && updates >= card_w)) {
            window_sum = 0.0;
            for (std::size_t x = lambda; x < upsilon; ++x) window_sum += sv[x];
            updates = 0;
        }

        double scaled;
        if (degenerate) {
            scaled = static_cast<double>(lambda);
        } else if (level) {
            scaled = static_cast<double>(lambda) + 0.5 * static_cast<double>(card_w);
        } else {
            scaled = static_cast<double>(lambda) +
                     (static_cast<double>(card_w) * (vt - q) - window_sum) / (p - q);
        }
        flow_by_row[row] = scaled * inv;
        observe(ScanStep{t, row, lambda, upsilon, window_sum, flow_by_row[row]});
    }
}

/// Sort a column ascending, breaking value ties by row index so the order is
/// deterministic, and return the permutation plus the sorted values.
inline void sort_column(const std::vector<double>& values,
                        std::vector<std::size_t>& order, std::vector<double>& sorted) {
    const std::size_t n = values.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    sorted.resize(n);
    for (std::size_t t = 0; t < n; ++t) sorted[t] = values[order[t]];
}

}  // namespace detail

/// Full record of one column scan, for diagnostics and tests: the sort
/// permutation, the sorted values, every per-slot window snapshot and the
/// resulting leaving flows (indexed by matrix row).
struct ColumnScanTrace {
    std::vector<std::size_t> order;
    std::vector<double> sorted_values;
    std::vector<ScanStep> steps;
    std::vector<double> flow;
};

/// Run the sorted window scan on one raw column and capture every step.
/// Computes leaving flows; feed the negated column to obtain entering flows.
[[nodiscard]] inline ColumnScanTrace scan_column_trace(const std::vector<double>& values,
                                                       PreferenceKind kind, double q,
                                                       double p) {
    if (values.size() < 2) {
        throw ValidationError("TooFewAlternatives",
                              "column scan needs at least 2 values, got " +
                                  std::to_string(values.size()));
    }
    ColumnScanTrace trace;
    detail::sort_column(values, trace.order, trace.sorted_values);
    trace.flow.assign(values.size(), 0.0);
    trace.steps.reserve(values.size());
    detail::scan_sorted_column(trace.sorted_values, trace.order, kind, q, p, trace.flow,
                               [&](const ScanStep& step) { trace.steps.push_back(step); });
    return trace;
}

/// Sorting engine: computes exactly the same flows as the pairwise engine in
/// O(m * n log n) by sorting each criterion column once per flow direction
/// and sweeping a value window across it. Entering flows reuse the leaving
/// scan through negation: the entering flow on a column equals the leaving
/// flow on the negated column, which gets its own fresh sort.
///
/// The 2*m (criterion, direction) scans are independent and may run on up to
/// `workers` threads; any worker count gives identical results because each
/// scan owns disjoint output slots and aggregation is serial.
[[nodiscard]] inline FlowResult compute_flows_sorting(const DecisionMatrix& matrix,
                                                      std::size_t workers = 1) {
    const std::size_t n = matrix.alternative_count();
    const std::size_t m = matrix.criterion_count();

    FlowResult result;
    result.alternative_count = n;
    result.criterion_count = m;
    result.uni_plus.assign(n * m, 0.0);
    result.uni_minus.assign(n * m, 0.0);

    detail::for_each_index(2 * m, workers, [&](std::size_t task) {
        const std::size_t k = task / 2;
        const bool entering = (task % 2) != 0;
        const Criterion& c = matrix.criteria()[k];

        std::vector<double> v = matrix.column(k);
        if (entering) {
            for (double& x : v) x = -x;
        }
        std::vector<std::size_t> order;
        std::vector<double> sorted;
        detail::sort_column(v, order, sorted);

        std::vector<double> flow(n, 0.0);
        detail::scan_sorted_column(sorted, order, c.kind, c.q, c.p, flow,
                                   detail::NoScanObserver{});

        std::vector<double>& target = entering ? result.uni_minus : result.uni_plus;
        for (std::size_t i = 0; i < n; ++i) target[i * m + k] = flow[i];
    });

    detail::aggregate_flows(matrix, result);
    return result;
}

}  // namespace promethee
