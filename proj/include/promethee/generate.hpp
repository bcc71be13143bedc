#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "preference.hpp"

namespace promethee {

/// Parameters of a synthetic benchmark instance.
struct GenerateSpec {
    std::size_t alternatives = 0;
    std::size_t criteria = 1;
    std::uint64_t seed = 0;
    PreferenceKind kind = PreferenceKind::linear;
    double q = 0.01;
    double p = 0.05;
};

namespace detail {

/// The fixed generator used everywhere synthetic data is made: mt19937_64,
/// with each draw mapped to [0, 1) by keeping the top 53 bits.
class Uniform01 {
  public:
    explicit Uniform01(std::uint64_t seed) : rng_(seed) {}

    double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace detail

/// Build a synthetic decision matrix: ids a1..an, criteria c1..cm (all
/// maximized, equal weight, shared thresholds), values drawn uniformly from
/// [0, 1) row by row. The same spec always yields the identical matrix.
[[nodiscard]] inline DecisionMatrix generate_matrix(const GenerateSpec& spec) {
    if (spec.alternatives < 2) {
        throw ValidationError("TooFewAlternatives",
                              "generator needs at least 2 alternatives, got " +
                                  std::to_string(spec.alternatives));
    }
    if (spec.criteria == 0) {
        throw ValidationError("NoCriteria", "generator needs at least one criterion");
    }

    std::vector<std::string> ids(spec.alternatives);
    for (std::size_t i = 0; i < spec.alternatives; ++i) ids[i] = "a" + std::to_string(i + 1);

    std::vector<Criterion> criteria(spec.criteria);
    for (std::size_t k = 0; k < spec.criteria; ++k) {
        criteria[k].name = "c" + std::to_string(k + 1);
        criteria[k].direction = Direction::maximize;
        criteria[k].kind = spec.kind;
        criteria[k].q = spec.q;
        criteria[k].p = spec.p;
        criteria[k].weight = 1.0;
    }

    detail::Uniform01 draw(spec.seed);
    std::vector<double> values(spec.alternatives * spec.criteria);
    for (double& v : values) v = draw();

    return DecisionMatrix(std::move(ids), std::move(criteria), std::move(values));
}

}  // namespace promethee
