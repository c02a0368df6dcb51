#include "hom/analytics.hpp"

#include "hom/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hom {
namespace {

void require_overlap(double m, const char* name) {
    if (!(m >= 0.0 && m <= 1.0 + 1e-12)) {
        throw ValidationError(std::string(name) + " must lie in [0, 1] (got " + std::to_string(m) + ")");
    }
}

void require_g2(double g2) {
    if (!(g2 >= 0.0) || !std::isfinite(g2)) {
        throw ValidationError("g2 must be finite and non-negative (got " + std::to_string(g2) + ")");
    }
}

}  // namespace

BeamSplitter BeamSplitter::from_reflectivity(double reflectivity, double phase) {
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw ValidationError("reflectivity R must lie in [0, 1] (got " + std::to_string(reflectivity) + ")");
    }
    if (!std::isfinite(phase)) throw ValidationError("beam splitter phase must be finite");
    return BeamSplitter(reflectivity, 1.0 - reflectivity, phase);
}

BeamSplitter BeamSplitter::from_angle(double theta, double phase) {
    if (!std::isfinite(theta)) throw ValidationError("beam splitter angle must be finite");
    if (!std::isfinite(phase)) throw ValidationError("beam splitter phase must be finite");
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return BeamSplitter(s * s, c * c, phase);
}

double visibility_general(InputSummary in1, InputSummary in2, double m12, const BeamSplitter& bs) {
    const double r = bs.reflectivity();
    const double t = bs.transmittance();
    const double denom = (t * in1.mu + r * in2.mu) * (t * in2.mu + r * in1.mu);
    if (!(denom > 0.0)) {
        throw ValidationError("visibility undefined: an output port receives zero intensity");
    }
    const double num = (1.0 - in1.g2) * in1.mu * in1.mu + 2.0 * m12 * in1.mu * in2.mu +
                       (1.0 - in2.g2) * in2.mu * in2.mu;
    return 2.0 * r * t * num / denom - 1.0;
}

double visibility_balanced(double m12, double g2_mean, const BeamSplitter& bs) {
    require_overlap(m12, "m12");
    require_g2(g2_mean);
    return bs.four_rt() * (m12 + 1.0 - g2_mean) - 1.0;
}

double visibility_separable(double m_s, double m_sn, double g2, const BeamSplitter& bs) {
    require_overlap(m_s, "m_s");
    require_overlap(m_sn, "m_sn");
    require_g2(g2);
    if (m_sn > m_s) {
        throw ValidationError("m_sn must not exceed m_s (got m_sn = " + std::to_string(m_sn) +
                              ", m_s = " + std::to_string(m_s) + ")");
    }
    return bs.four_rt() * (1.0 + m_s - (1.0 + m_s) / (1.0 + m_sn) * g2) - 1.0;
}

double slope_at_origin(double m_s, double m_sn, double m_sn_prime, const BeamSplitter& bs) {
    require_overlap(m_s, "m_s");
    require_overlap(m_sn, "m_sn");
    if (!(m_sn_prime >= -1.0 && m_sn_prime <= 1.0)) {
        throw ValidationError("m_sn_prime must lie in [-1, 1]");
    }
    return -bs.four_rt() * (1.0 + m_s + (m_sn - m_sn_prime)) / (1.0 + m_sn);
}

SweepRecord sweep_point(double m_s, double m_n, double m_sn, double m_sn_prime,
                        const BeamSplitter& bs, double eta) {
    if (!(eta >= 0.0 && eta <= std::numbers::pi / 2 + 1e-12)) {
        throw ValidationError("eta must lie in [0, pi/2] (got " + std::to_string(eta) + ")");
    }
    const double c = std::cos(eta);
    const double s = std::sin(eta);
    const double c2 = c * c;
    const double s2 = s * s;
    SweepRecord rec{};
    rec.eta = eta;
    rec.g2 = 2.0 * (1.0 + m_sn) * c2 * s2;
    rec.v_hom = bs.four_rt() * (1.0 + m_s * c2 * c2 + m_n * s2 * s2 -
                                2.0 * (1.0 + m_sn - m_sn_prime) * c2 * s2) -
                1.0;
    return rec;
}

std::vector<SweepRecord> parametric_sweep(double m_s, double m_n, double m_sn, double m_sn_prime,
                                          const BeamSplitter& bs, std::span<const double> eta_values) {
    require_overlap(m_s, "m_s");
    require_overlap(m_n, "m_n");
    require_overlap(m_sn, "m_sn");
    std::vector<SweepRecord> out;
    out.reserve(eta_values.size());
    for (double eta : eta_values) out.push_back(sweep_point(m_s, m_n, m_sn, m_sn_prime, bs, eta));
    return out;
}

double extract_ms(double v_hom, double g2, const BeamSplitter& bs) {
    return extract_ms_general(v_hom, g2, 0.0, bs);
}

double extract_ms_general(double v_hom, double g2, double m_sn, const BeamSplitter& bs) {
    require_g2(g2);
    require_overlap(m_sn, "m_sn");
    if (!std::isfinite(v_hom)) throw ValidationError("visibility must be finite");
    if (g2 >= 1.0 + m_sn) {
        throw ValidationError("g2 = " + std::to_string(g2) + " leaves M_s undetermined");
    }
    const double denom = bs.four_rt() * (1.0 - g2 / (1.0 + m_sn));
    if (!(denom > 0.0)) throw ValidationError("M_s extraction undefined for R*T = 0");
    return (v_hom + 1.0) / denom - 1.0;
}

}  // namespace hom
