#pragma once

#include <string_view>
#include <vector>

namespace hom {

/// Non-fatal conditions attached to results.
enum class Warning {
    /// g2 above 0.3, outside the weak-noise regime the model targets.
    high_g2,
    /// Noise overlaps the signal more than the signal overlaps itself.
    msn_exceeds_ms,
    /// Fitted parameter clamped to its physical range.
    fit_at_boundary,
};

inline constexpr double kHighG2Threshold = 0.3;

std::string_view warning_name(Warning w) noexcept;

/// high_g2 when g2 > 0.3, otherwise nothing.
std::vector<Warning> g2_warnings(double g2);

}  // namespace hom
