#include "hom/oracle_campaign.hpp"

#include "hom/analytics.hpp"
#include "hom/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hom::fock {

TemporalDensityMatrix random_density(const TimeGrid& grid, std::size_t rank, Rng& rng) {
    const std::size_t n = grid.n_bins;
    rank = std::clamp<std::size_t>(rank, 1, n);
    // rho = G G^dag with complex Gaussian G (n x rank)
    std::vector<std::complex<double>> g(n * rank);
    for (auto& v : g) v = {rng.normal(), rng.normal()};
    std::vector<double> re(n * n);
    std::vector<double> im(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            std::complex<double> s{};
            for (std::size_t r = 0; r < rank; ++r) s += g[j * rank + r] * std::conj(g[k * rank + r]);
            re[j * n + k] = re[k * n + j] = s.real();
            im[j * n + k] = j == k ? 0.0 : s.imag();
            im[k * n + j] = -im[j * n + k];
        }
    }
    TemporalDensityMatrix xi(grid, std::move(re), std::move(im));
    return normalize(xi);
}

InstanceReport run_instance(std::uint64_t instance_seed, const CampaignConfig& cfg,
                            std::size_t index) {
    Rng rng(instance_seed);
    InstanceReport rep;
    rep.instance_seed = instance_seed;
    rep.n_bins = static_cast<std::size_t>(rng.uniform_int(1, std::max<std::size_t>(cfg.max_bins, 1)));
    const double span = static_cast<double>(rep.n_bins) * rng.uniform(1.0, 20.0);
    const TimeGrid grid = build_grid(0.0, span, rep.n_bins);

    const auto xi_a = random_density(grid, rng.uniform_int(1, rep.n_bins), rng);
    const auto xi_b = random_density(grid, rng.uniform_int(1, rep.n_bins), rng);
    const double p_a = rng.uniform(0.2, 1.0);
    const double p_b = rng.uniform(0.2, 1.0);

    // Every tenth instance probes a fully reflective or fully transmissive splitter.
    switch (index % 10) {
        case 3: rep.reflectivity = 0.0; break;
        case 7: rep.reflectivity = 1.0; break;
        default: rep.reflectivity = rng.uniform(); break;
    }
    const double bs_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto bs = BeamSplitter::from_reflectivity(rep.reflectivity, bs_phase);
    rep.phase_rate = rng.uniform(-2.0, 2.0) / grid.dt();
    rep.theta_mix = rng.uniform(0.0, std::numbers::pi / 2);

    try {
        // HOM between source a and a phase-shifted copy of source b.
        const auto a = SourceState::make(p_a, xi_a);
        const auto b_shifted = SourceState::make(p_b, apply_phase(xi_b, PhaseSpec{rep.phase_rate}));
        const double m12 = mean_wavepacket_overlap(xi_a, xi_b, PhaseSpec{-rep.phase_rate});
        rep.analytic_v = visibility_general({p_a, 0.0}, {p_b, 0.0}, m12, bs);
        rep.oracle_v = oracle_hom(a, b_shifted, bs, cfg.bin_budget).v_hom;
        rep.abs_diff = std::abs(rep.analytic_v - rep.oracle_v);

        // Separable-noise source built both ways.
        const auto signal = SourceState::make(p_a, xi_a);
        const auto noise = SourceState::make(p_b, xi_b);
        const MixAngle angle(rep.theta_mix);
        const auto scalar = mix_sources(signal, noise, angle);
        const auto state = mix_oracle(signal, noise, angle, cfg.bin_budget);
        rep.analytic_g2 = scalar.g2;
        rep.oracle_g2 = oracle_g2(state);
        rep.oracle_hbt_g2 = oracle_hbt_g2(state);
        rep.g2_abs_diff = std::max(std::abs(rep.analytic_g2 - rep.oracle_g2),
                                   std::abs(rep.analytic_g2 - rep.oracle_hbt_g2));
        rep.analytic_m_tot = scalar.m_tot;
        rep.oracle_m_tot = first_order_overlap(state);
        rep.m_tot_abs_diff = std::abs(rep.analytic_m_tot - rep.oracle_m_tot);
    } catch (const BudgetError& e) {
        rep.error = e.what();
    }
    return rep;
}

CampaignReport run_oracle_campaign(const CampaignConfig& cfg) {
    if (cfg.max_bins == 0) throw ValidationError("max_bins must be at least 1");
    CampaignReport report;
    report.config = cfg;
    report.instances.reserve(cfg.instances);
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        auto rep = run_instance(mix_seed(cfg.seed + i), cfg, i);
        if (rep.error) {
            ++report.budget_violations;
        } else {
            ++report.evaluated;
            report.max_abs_diff_v = std::max(report.max_abs_diff_v, rep.abs_diff);
            report.max_abs_diff_g2 = std::max(report.max_abs_diff_g2, rep.g2_abs_diff);
            report.max_abs_diff_m_tot = std::max(report.max_abs_diff_m_tot, rep.m_tot_abs_diff);
        }
        report.instances.push_back(std::move(rep));
    }
    report.passed = report.evaluated > 0 && report.max_abs_diff_v <= cfg.tolerance &&
                    report.max_abs_diff_g2 <= cfg.tolerance &&
                    report.max_abs_diff_m_tot <= cfg.tolerance;
    return report;
}

}  // namespace hom::fock
