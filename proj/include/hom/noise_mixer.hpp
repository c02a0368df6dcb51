#pragma once

// Separable-noise source model: an ideal single photon and a weak noise field
// (at most one photon) meet on a beam splitter of angle theta_mix; the
// reflected port is discarded.

#include "hom/temporal.hpp"
#include "hom/warnings.hpp"

#include <vector>

namespace hom {

/// Vacuum plus one-photon field.
struct SourceState {
    double p_vac;
    double p_one;
    TemporalDensityMatrix one_photon;

    /// p_vac is derived as 1 - p_one; one_photon must be normalized.
    static SourceState make(double p_one, TemporalDensityMatrix one_photon);
};

/// Mixing angle in [0, pi/2].
class MixAngle {
  public:
    explicit MixAngle(double theta_mix);
    double radians() const noexcept { return theta_; }

  private:
    double theta_;
};

struct ImperfectSource {
    double p0 = 1.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double mu = 0.0;
    double g2 = 0.0;
    double m_tot = 0.0;
    double eta = 0.0;
    double m_s = 0.0;
    double m_n = 0.0;
    double m_sn = 0.0;
    double m_sn_prime = 0.0;
    std::vector<Warning> warnings;
};

ImperfectSource mix_sources(const SourceState& signal, const SourceState& noise, MixAngle angle,
                            PhaseSpec phase = {});

/// Noise parameter eta with cos^2(eta) = p_s1 cos^2(theta)/mu.
double eta_of(double p_s1, double p_n1, MixAngle angle);

}  // namespace hom
