#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "generate.hpp"
#include "io.hpp"
#include "model.hpp"
#include "pairwise_engine.hpp"
#include "sorting_engine.hpp"

namespace promethee {

/// Scaling benchmark over synthetic instances of doubling sizes.
struct BenchConfig {
    std::vector<std::size_t> sizes;  ///< instance sizes, ascending
    std::size_t criteria = 1;
    std::uint64_t seed = 42;
    std::size_t repeats = 3;
    /// Largest size the quadratic pairwise engine is asked to run; bigger
    /// sizes are reported as skipped instead of burning hours.
    std::size_t max_pairwise_n = 65536;
    std::size_t workers = 1;
    double q = 0.01;
    double p = 0.05;
    PreferenceKind kind = PreferenceKind::linear;
    bool run_pairwise = true;
    bool run_sorting = true;
};

/// Timings of one engine at one size. `ratio` compares this size's median
/// against the previous measured size of the same engine, so doubling sizes
/// make it the empirical scaling factor.
struct BenchRow {
    std::string engine;  ///< "pairwise" or "sorting"
    std::size_t n = 0;
    std::size_t criteria = 1;
    std::uint64_t seed = 0;
    bool skipped = false;
    std::vector<double> seconds;  ///< one entry per repeat
    std::optional<double> median_seconds;
    std::optional<double> ratio;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

namespace detail {

/// Defeat dead-code elimination of a computed result.
inline void do_not_optimize(const void* p) { asm volatile("" : : "g"(p) : "memory"); }

[[nodiscard]] inline double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t h = xs.size() / 2;
    if (xs.size() % 2 == 1) return xs[h];
    return 0.5 * (xs[h - 1] + xs[h]);
}

template <typename Engine>
[[nodiscard]] inline double time_once(const DecisionMatrix& matrix, std::size_t workers,
                                      Engine&& engine) {
    const auto start = std::chrono::steady_clock::now();
    const FlowResult flows = engine(matrix, workers);
    const auto stop = std::chrono::steady_clock::now();
    do_not_optimize(flows.phi.data());
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace detail

/// Run the scaling benchmark. Only the flow computation is timed (for the
/// sorting engine that includes its sorts); building the instance and one
/// untimed warm-up run per (engine, size) happen outside the clock. Each
/// size gets its own deterministic instance, seeded with `seed + n`.
/// `on_row` (optional) observes each finished row, e.g. for live progress.
[[nodiscard]] inline BenchReport run_bench(
    const BenchConfig& config, const std::function<void(const BenchRow&)>& on_row = {}) {
    BenchReport report;

    const auto run_engine = [&](const std::string& name, auto&& engine, bool limit) {
        std::optional<double> previous_median;
        for (const std::size_t n : config.sizes) {
            BenchRow row;
            row.engine = name;
            row.n = n;
            row.criteria = config.criteria;
            row.seed = config.seed + static_cast<std::uint64_t>(n);

            if (limit && n > config.max_pairwise_n) {
                row.skipped = true;
                if (on_row) on_row(row);
                report.rows.push_back(std::move(row));
                continue;
            }

            GenerateSpec spec;
            spec.alternatives = n;
            spec.criteria = config.criteria;
            spec.seed = row.seed;
            spec.kind = config.kind;
            spec.q = config.q;
            spec.p = config.p;
            const DecisionMatrix matrix = generate_matrix(spec);

            (void)detail::time_once(matrix, config.workers, engine);  // warm-up
            for (std::size_t r = 0; r < config.repeats; ++r) {
                row.seconds.push_back(detail::time_once(matrix, config.workers, engine));
            }
            row.median_seconds = detail::median_of(row.seconds);
            if (previous_median && *previous_median > 0.0) {
                row.ratio = *row.median_seconds / *previous_median;
            }
            previous_median = row.median_seconds;

            if (on_row) on_row(row);
            report.rows.push_back(std::move(row));
        }
    };

    if (config.run_pairwise) {
        run_engine(
            "pairwise",
            [](const DecisionMatrix& m, std::size_t w) { return compute_flows_pairwise(m, w); },
            /*limit=*/true);
    }
    if (config.run_sorting) {
        run_engine(
            "sorting",
            [](const DecisionMatrix& m, std::size_t w) { return compute_flows_sorting(m, w); },
            /*limit=*/false);
    }
    return report;
}

/// Write the report as CSV, one record per repeat; the size's median and
/// doubling ratio are repeated on each of its records. Skipped sizes produce
/// a single record with empty measurement fields.
inline void write_bench_csv(std::ostream& out, const BenchReport& report) {
    out << "engine,n,criteria,seed,repeat,seconds,median_seconds,ratio,status\n";
    for (const BenchRow& row : report.rows) {
        if (row.skipped) {
            out << row.engine << ',' << row.n << ',' << row.criteria << ',' << row.seed
                << ",,,,,skipped: exceeds pairwise size limit\n";
            continue;
        }
        for (std::size_t r = 0; r < row.seconds.size(); ++r) {
            out << row.engine << ',' << row.n << ',' << row.criteria << ',' << row.seed << ','
                << r << ',' << format_double(row.seconds[r], 6) << ','
                << format_double(*row.median_seconds, 6) << ',';
            if (row.ratio) out << format_double(*row.ratio, 4);
            out << ",ok\n";
        }
    }
}

}  // namespace promethee
