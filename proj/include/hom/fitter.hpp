#pragma once

// Single-parameter weighted least-squares fit of (g2, V_HOM) data to the
// separable-noise visibility model. For every supported noise model V is
// affine in M_s, so each fit is a closed-form weighted mean; the g2 error bars
// enter through the effective-variance method, iterated to self-consistency.

#include "hom/beam_splitter.hpp"
#include "hom/warnings.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hom::fit {

struct DataPoint {
    double g2 = 0.0;
    double g2_sigma = 0.0;
    double v = 0.0;
    double v_sigma = 0.0;
};

enum class NoiseKind { distinguishable, identical, fixed_overlap };

struct NoiseModel {
    NoiseKind kind = NoiseKind::distinguishable;
    double m_sn = 0.0;  // fixed_overlap only
    BeamSplitter bs{};

    /// "distinguishable", "identical" or "fixed:<m_sn>".
    static NoiseModel parse(std::string_view spec, BeamSplitter bs = {});
    std::string name() const;

    /// V = intercept + slope_ms * m_s at the given g2.
    struct Affine {
        double intercept;
        double slope_ms;
    };
    Affine affine(double g2) const;
    double visibility(double m_s, double g2) const;
    /// dV/dg2 at fixed m_s.
    double dv_dg2(double m_s) const;
};

struct FitResult {
    double m_s = 0.0;
    double m_s_sigma = 0.0;
    double chi2 = 0.0;
    int dof = 0;
    NoiseModel model;
    bool at_boundary = false;
    std::vector<Warning> warnings;
};

FitResult fit(std::span<const DataPoint> points, const NoiseModel& model);

struct Bounds {
    FitResult lower;  // identical-noise fit
    FitResult upper;  // distinguishable-noise fit
};

Bounds bound_ms(std::span<const DataPoint> points, const BeamSplitter& bs = {});

std::vector<DataPoint> synthesize_dataset(double m_s, const NoiseModel& model,
                                          std::span<const double> g2_values, double noise_sigma,
                                          std::uint64_t seed);

/// CSV columns g2, g2_sigma, v, v_sigma (header optional).
std::vector<DataPoint> read_dataset(std::istream& in);
std::vector<DataPoint> read_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, std::span<const DataPoint> points);

}  // namespace hom::fit
