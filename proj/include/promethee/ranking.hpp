#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flows.hpp"

namespace promethee {

/// How alternative `a` relates to alternative `b` in the partial ranking.
enum class Relation {
    preferred,     ///< a is strictly better on both flow scores
    preferred_by,  ///< b is strictly better on both flow scores
    indifferent,   ///< the flow scores agree within the tolerance
    incomparable,  ///< the two flow scores disagree about who is better
};

/// Canonical single-letter tag: P for preferred (either direction),
/// I for indifferent, R for incomparable.
[[nodiscard]] constexpr char relation_symbol(Relation r) noexcept {
    switch (r) {
        case Relation::preferred:
        case Relation::preferred_by: return 'P';
        case Relation::indifferent: return 'I';
        case Relation::incomparable: return 'R';
    }
    return '?';
}

/// Total preorder by net flow: every alternative gets a dense 1-based rank,
/// equal within a tie group. Groups are formed by chaining: walking the
/// alternatives in descending net-flow order, an alternative joins the
/// current group while its net flow is within `tie_eps` of the previous
/// one, so near-ties collapse transitively.
struct NetRanking {
    double tie_eps = 0.0;
    std::vector<std::size_t> order;                ///< alternative indices, best first
    std::vector<std::size_t> rank;                 ///< rank[i] = dense rank of alternative i
    std::vector<std::vector<std::size_t>> groups;  ///< tie groups, best first
};

/// Pairwise relations derived from the leaving and entering flows, stored as
/// a dense n-by-n matrix. Quadratic in the number of alternatives, so meant
/// for decision problems, not for bulk scoring runs.
struct PartialRanking {
    double tie_eps = 0.0;
    std::size_t alternative_count = 0;
    std::vector<Relation> relations;  ///< row-major, relations[a*n + b]

    [[nodiscard]] Relation at(std::size_t a, std::size_t b) const noexcept {
        return relations[a * alternative_count + b];
    }
};

namespace detail {

inline void require_flows(const FlowResult& flows, const char* who) {
    if (flows.alternative_count < 2 || flows.phi.size() != flows.alternative_count ||
        flows.phi_plus.size() != flows.alternative_count ||
        flows.phi_minus.size() != flows.alternative_count) {
        throw std::invalid_argument(std::string(who) + ": flow result is empty or inconsistent");
    }
}

}  // namespace detail

/// Rank alternatives by descending net flow. `tie_eps` must be >= 0; exact
/// ties (and near-ties within tie_eps, chained transitively) share a rank.
/// Within a group the stored order falls back to ascending alternative index
/// so output is deterministic.
[[nodiscard]] inline NetRanking net_flow_ranking(const FlowResult& flows, double tie_eps = 0.0) {
    detail::require_flows(flows, "net_flow_ranking");
    if (!(tie_eps >= 0.0)) {
        throw std::invalid_argument("net_flow_ranking: tie_eps must be >= 0");
    }
    const std::size_t n = flows.alternative_count;

    NetRanking out;
    out.tie_eps = tie_eps;
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        if (flows.phi[a] != flows.phi[b]) return flows.phi[a] > flows.phi[b];
        return a < b;
    });

    out.rank.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t i = out.order[t];
        const bool new_group =
            t == 0 || flows.phi[out.order[t - 1]] - flows.phi[i] > tie_eps;
        if (new_group) out.groups.emplace_back();
        out.groups.back().push_back(i);
        out.rank[i] = out.groups.size();
    }
    return out;
}

/// Build the partial ranking from leaving and entering flows. For each pair,
/// flow differences within `tie_eps` count as equal; indifference (equal on
/// both scores) is decided first, then strict preference requires being at
/// least as good on both scores and strictly better on one, and anything
/// else — one score better, the other worse — is incomparable.
[[nodiscard]] inline PartialRanking partial_ranking(const FlowResult& flows,
                                                    double tie_eps = 0.0) {
    detail::require_flows(flows, "partial_ranking");
    if (!(tie_eps >= 0.0)) {
        throw std::invalid_argument("partial_ranking: tie_eps must be >= 0");
    }
    const std::size_t n = flows.alternative_count;

    PartialRanking out;
    out.tie_eps = tie_eps;
    out.alternative_count = n;
    out.relations.assign(n * n, Relation::indifferent);

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double d_plus = flows.phi_plus[a] - flows.phi_plus[b];
            const double d_minus = flows.phi_minus[a] - flows.phi_minus[b];
            const bool eq_plus = std::fabs(d_plus) <= tie_eps;
            const bool eq_minus = std::fabs(d_minus) <= tie_eps;

            Relation r;
            if (eq_plus && eq_minus) {
                r = Relation::indifferent;
            } else if ((d_plus > 0.0 || eq_plus) && (d_minus < 0.0 || eq_minus)) {
                r = Relation::preferred;
            } else if ((d_plus < 0.0 || eq_plus) && (d_minus > 0.0 || eq_minus)) {
                r = Relation::preferred_by;
            } else {
                r = Relation::incomparable;
            }
            out.relations[a * n + b] = r;
            out.relations[b * n + a] =
                r == Relation::preferred      ? Relation::preferred_by
                : r == Relation::preferred_by ? Relation::preferred
                                              : r;
        }
    }
    return out;
}

}  // namespace promethee
