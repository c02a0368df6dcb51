#pragma once

// Randomised equivalence campaign: closed-form visibilities and g2 against the
// explicit Fock-space oracle on small random instances.

#include "hom/fock.hpp"
#include "hom/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hom::fock {

struct CampaignConfig {
    std::size_t instances = 100;
    std::uint64_t seed = 1;
    std::size_t max_bins = 8;
    std::size_t bin_budget = kDefaultBinBudget;
    double tolerance = 1e-10;
};

struct InstanceReport {
    std::uint64_t instance_seed = 0;
    std::size_t n_bins = 0;
    double reflectivity = 0.5;
    double phase_rate = 0.0;
    double theta_mix = 0.0;

    // Two one-photon inputs on the HOM splitter.
    double analytic_v = 0.0;
    double oracle_v = 0.0;
    double abs_diff = 0.0;

    // Separable-noise mixer: scalar model against the explicit state.
    double analytic_g2 = 0.0;
    double oracle_g2 = 0.0;
    double oracle_hbt_g2 = 0.0;
    double g2_abs_diff = 0.0;
    double analytic_m_tot = 0.0;
    double oracle_m_tot = 0.0;
    double m_tot_abs_diff = 0.0;

    /// Set when the instance could not be evaluated (e.g. budget exceeded).
    std::optional<std::string> error;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<InstanceReport> instances;
    double max_abs_diff_v = 0.0;
    double max_abs_diff_g2 = 0.0;
    double max_abs_diff_m_tot = 0.0;
    std::size_t budget_violations = 0;
    std::size_t evaluated = 0;
    bool passed = false;
};

/// Random normalised density matrix of the given rank (Wishart-style).
TemporalDensityMatrix random_density(const TimeGrid& grid, std::size_t rank, Rng& rng);

InstanceReport run_instance(std::uint64_t instance_seed, const CampaignConfig& cfg,
                            std::size_t index);

CampaignReport run_oracle_campaign(const CampaignConfig& cfg);

}  // namespace hom::fock
