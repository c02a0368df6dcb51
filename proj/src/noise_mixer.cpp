#include "hom/noise_mixer.hpp"

#include "hom/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hom {

std::string_view warning_name(Warning w) noexcept {
    switch (w) {
        case Warning::high_g2: return "high_g2";
        case Warning::msn_exceeds_ms: return "msn_exceeds_ms";
        case Warning::fit_at_boundary: return "fit_at_boundary";
    }
    return "unknown";
}

std::vector<Warning> g2_warnings(double g2) {
    if (g2 > kHighG2Threshold) return {Warning::high_g2};
    return {};
}

SourceState SourceState::make(double p_one, TemporalDensityMatrix one_photon) {
    if (!(p_one >= 0.0 && p_one <= 1.0)) {
        throw ValidationError("p_one must lie in [0, 1] (got " + std::to_string(p_one) + ")");
    }
    if (std::abs(one_photon.trace() - 1.0) > 1e-6) {
        throw ValidationError("one-photon density matrix must be normalized");
    }
    return SourceState{1.0 - p_one, p_one, std::move(one_photon)};
}

MixAngle::MixAngle(double theta_mix) : theta_(theta_mix) {
    if (!(theta_mix >= 0.0 && theta_mix <= std::numbers::pi / 2)) {
        throw ValidationError("theta_mix must lie in [0, pi/2] (got " + std::to_string(theta_mix) + ")");
    }
}

double eta_of(double p_s1, double p_n1, MixAngle angle) {
    const double c2 = std::cos(angle.radians()) * std::cos(angle.radians());
    const double s2 = std::sin(angle.radians()) * std::sin(angle.radians());
    const double signal = p_s1 * c2;
    const double noise = p_n1 * s2;
    const double mu = signal + noise;
    if (!(mu > 0.0)) throw ValidationError("eta is undefined for zero mean photon number");
    // atan2 keeps both limits exact: eta = 0 without noise, pi/2 without signal.
    return std::atan2(std::sqrt(noise), std::sqrt(signal));
}

ImperfectSource mix_sources(const SourceState& signal, const SourceState& noise, MixAngle angle,
                            PhaseSpec phase) {
    if (!(signal.one_photon.grid() == noise.one_photon.grid())) {
        throw GridMismatchError("signal and noise live on different time grids");
    }
    const double c = std::cos(angle.radians());
    const double s = std::sin(angle.radians());
    const double c2 = c * c;
    const double s2 = s * s;
    const double ps = signal.p_one;
    const double pn = noise.p_one;

    ImperfectSource out;
    out.mu = ps * c2 + pn * s2;
    if (!(out.mu > 0.0)) {
        throw ValidationError("mixed source has zero mean photon number");
    }
    out.m_s = trace_purity(signal.one_photon);
    out.m_n = trace_purity(noise.one_photon);
    out.m_sn = mean_wavepacket_overlap(signal.one_photon, noise.one_photon);
    out.m_sn_prime = phase.rate == 0.0
                         ? out.m_sn
                         : mean_wavepacket_overlap(signal.one_photon, noise.one_photon, phase);

    out.p2 = ps * pn * (1.0 + out.m_sn) * c2 * s2;
    out.p1 = out.mu - 2.0 * out.p2;
    out.p0 = 1.0 - out.p1 - out.p2;
    out.g2 = 2.0 * out.p2 / (out.mu * out.mu);
    out.m_tot = (ps * ps * out.m_s * c2 * c2 + pn * pn * out.m_n * s2 * s2 +
                 2.0 * ps * pn * out.m_sn_prime * c2 * s2) /
                (out.mu * out.mu);
    out.eta = eta_of(ps, pn, angle);

    out.warnings = g2_warnings(out.g2);
    if (pn > 0.0 && out.m_sn > out.m_s + 1e-12) out.warnings.push_back(Warning::msn_exceeds_ms);
    return out;
}

}  // namespace hom
