#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "preference.hpp"

namespace promethee {

/// Whether larger or smaller evaluations are better on a criterion.
enum class Direction { maximize, minimize };

/// One ranking criterion: a named column together with its preference
/// function shape, indifference threshold q, preference threshold p and a
/// positive weight. Thresholds live on the difference scale, so orienting a
/// minimizing column (negating its values) leaves them untouched.
struct Criterion {
    std::string name;
    Direction direction = Direction::maximize;
    PreferenceKind kind = PreferenceKind::linear;
    double q = 0.0;
    double p = 0.0;
    double weight = 1.0;
};

/// Validation failures raised while assembling a model. `code` is a stable
/// machine-readable tag; `what()` carries the human-readable detail.
class ValidationError : public std::runtime_error {
  public:
    ValidationError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

/// Alternatives-by-criteria evaluation table in row-major order plus the
/// criterion descriptors. Construction validates everything the engines
/// assume, orients minimizing columns and normalizes weights, so downstream
/// code never re-checks.
class DecisionMatrix {
  public:
    DecisionMatrix(std::vector<std::string> ids,
                   std::vector<Criterion> criteria,
                   std::vector<double> values)
        : ids_(std::move(ids)), criteria_(std::move(criteria)), values_(std::move(values)) {
        validate();
        orient();
        normalize_weights();
    }

    [[nodiscard]] std::size_t alternative_count() const noexcept { return ids_.size(); }
    [[nodiscard]] std::size_t criterion_count() const noexcept { return criteria_.size(); }

    [[nodiscard]] const std::vector<std::string>& ids() const noexcept { return ids_; }
    [[nodiscard]] const std::vector<Criterion>& criteria() const noexcept { return criteria_; }

    /// Oriented evaluation of alternative `i` on criterion `k` (minimizing
    /// columns are stored negated so "larger is better" holds everywhere).
    [[nodiscard]] double value(std::size_t i, std::size_t k) const noexcept {
        return values_[i * criteria_.size() + k];
    }

    /// Contiguous row-major storage, mostly for tests and IO.
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    /// Copy of one oriented column, in alternative order.
    [[nodiscard]] std::vector<double> column(std::size_t k) const {
        std::vector<double> out(alternative_count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(i, k);
        return out;
    }

  private:
    void validate() const {
        const std::size_t n = ids_.size();
        const std::size_t m = criteria_.size();
        if (n < 2) {
            throw ValidationError("TooFewAlternatives",
                                  "need at least 2 alternatives, got " + std::to_string(n));
        }
        if (m == 0) {
            throw ValidationError("NoCriteria", "need at least one criterion");
        }
        if (values_.size() != n * m) {
            throw ValidationError("BadShape",
                                  "expected " + std::to_string(n * m) + " values, got " +
                                      std::to_string(values_.size()));
        }
        std::unordered_set<std::string> seen;
        for (const auto& id : ids_) {
            if (!seen.insert(id).second) {
                throw ValidationError("DuplicateAlternativeId",
                                      "duplicate alternative id '" + id + "'");
            }
        }
        for (const auto& c : criteria_) {
            if (!std::isfinite(c.q) || !std::isfinite(c.p) || c.q < 0.0 || c.p < c.q) {
                throw ValidationError("BadThresholds",
                                      "criterion '" + c.name +
                                          "' requires finite 0 <= q <= p, got q=" +
                                          std::to_string(c.q) + " p=" + std::to_string(c.p));
            }
            if (!std::isfinite(c.weight) || c.weight <= 0.0) {
                throw ValidationError("NonPositiveWeight",
                                      "criterion '" + c.name + "' requires a finite weight > 0");
            }
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw ValidationError("NonFiniteValue", "evaluation table contains a non-finite value");
            }
        }
    }

    /// Negate minimizing columns so every criterion reads "larger is better".
    void orient() {
        const std::size_t m = criteria_.size();
        for (std::size_t k = 0; k < m; ++k) {
            if (criteria_[k].direction == Direction::minimize) {
                for (std::size_t i = 0; i < ids_.size(); ++i) values_[i * m + k] = -values_[i * m + k];
            }
        }
    }

    /// Scale weights to sum to one. Skipped when the sum is already within a
    /// few ulps of one so that normalizing twice is an exact no-op.
    void normalize_weights() {
        double sum = 0.0;
        for (const auto& c : criteria_) sum += c.weight;
        const double tol =
            16.0 * static_cast<double>(criteria_.size()) * std::numeric_limits<double>::epsilon();
        if (std::fabs(sum - 1.0) <= tol) return;
        for (auto& c : criteria_) c.weight /= sum;
    }

    std::vector<std::string> ids_;
    std::vector<Criterion> criteria_;
    std::vector<double> values_;
};

}  // namespace promethee
