#pragma once

namespace promethee {

/// Shape of the function mapping a pairwise difference to a preference degree.
enum class PreferenceKind { linear, level };

/// Pairwise evaluation difference d = f(a) - f(b).
[[nodiscard]] constexpr double difference(double fi, double fj) noexcept {
    return fi - fj;
}

/// Linear preference: 0 for d <= q, a ramp (d-q)/(p-q) on (q, p], 1 beyond p.
/// With p == q the middle branch is empty and the function degenerates to a
/// right-continuous step at q.
[[nodiscard]] constexpr double linear_preference(double d, double q, double p) noexcept {
    if (d <= q) return 0.0;
    if (d > p) return 1.0;
    return (d - q) / (p - q);
}

/// Level preference: 0 for d <= q, 1/2 on (q, p], 1 beyond p.
/// Same degenerate step behaviour at p == q as the linear shape.
[[nodiscard]] constexpr double level_preference(double d, double q, double p) noexcept {
    if (d <= q) return 0.0;
    if (d > p) return 1.0;
    return 0.5;
}

/// Dispatch on the function kind.
[[nodiscard]] constexpr double preference(PreferenceKind kind, double d, double q, double p) noexcept {
    return kind == PreferenceKind::linear ? linear_preference(d, q, p)
                                          : level_preference(d, q, p);
}

}  // namespace promethee
