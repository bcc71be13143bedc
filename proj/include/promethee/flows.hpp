#pragma once

#include <cstddef>
#include <vector>

#include "model.hpp"

namespace promethee {

/// Flow scores of every alternative: per-criterion (unicriterion) leaving and
/// entering flows plus their weighted aggregates. Layout of the per-criterion
/// tables is row-major `[alternative][criterion]`, matching DecisionMatrix.
struct FlowResult {
    std::size_t alternative_count = 0;
    std::size_t criterion_count = 0;

    std::vector<double> uni_plus;   ///< n*m unicriterion leaving flows
    std::vector<double> uni_minus;  ///< n*m unicriterion entering flows

    std::vector<double> phi_plus;   ///< n aggregated leaving flows
    std::vector<double> phi_minus;  ///< n aggregated entering flows
    std::vector<double> phi;        ///< n net flows

    [[nodiscard]] double uni_plus_at(std::size_t i, std::size_t k) const noexcept {
        return uni_plus[i * criterion_count + k];
    }
    [[nodiscard]] double uni_minus_at(std::size_t i, std::size_t k) const noexcept {
        return uni_minus[i * criterion_count + k];
    }
    [[nodiscard]] double uni_net_at(std::size_t i, std::size_t k) const noexcept {
        return uni_plus_at(i, k) - uni_minus_at(i, k);
    }
};

namespace detail {

/// Shared aggregation step: given filled unicriterion tables, form the
/// weighted flows. The summation order is fixed (criterion 0, 1, ...) and the
/// net flow is aggregated from exact unicriterion nets, so that every engine
/// that fills the tables identically also aggregates identically and
/// phi == phi_plus - phi_minus holds up to one rounding of each term.
inline void aggregate_flows(const DecisionMatrix& matrix, FlowResult& result) {
    const std::size_t n = matrix.alternative_count();
    const std::size_t m = matrix.criterion_count();
    result.phi_plus.assign(n, 0.0);
    result.phi_minus.assign(n, 0.0);
    result.phi.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double plus = 0.0;
        double minus = 0.0;
        double net = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double w = matrix.criteria()[k].weight;
            const double up = result.uni_plus_at(i, k);
            const double um = result.uni_minus_at(i, k);
            plus += w * up;
            minus += w * um;
            net += w * (up - um);
        }
        result.phi_plus[i] = plus;
        result.phi_minus[i] = minus;
        result.phi[i] = net;
    }
}

}  // namespace detail

}  // namespace promethee
