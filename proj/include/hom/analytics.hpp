#pragma once

// Closed-form HOM visibilities, the parametric (g2, V) curve of the separable
// noise model, its slope at the origin and the inverse used to recover the
// single-photon overlap M_s.

#include "hom/beam_splitter.hpp"

#include <span>
#include <vector>

namespace hom {

struct InputSummary {
    double mu;
    double g2;
};

struct SweepRecord {
    double eta;
    double g2;
    double v_hom;
};

/// Unentangled inputs with arbitrary intensities.
double visibility_general(InputSummary in1, InputSummary in2, double m12, const BeamSplitter& bs);

/// Equal input intensities: 4RT(m12 + 1 - g2_mean) - 1.
double visibility_balanced(double m12, double g2_mean, const BeamSplitter& bs);

/// Separable-noise visibility at small g2.
double visibility_separable(double m_s, double m_sn, double g2, const BeamSplitter& bs);

/// lim dV/dg2 as eta -> 0.
double slope_at_origin(double m_s, double m_sn, double m_sn_prime, const BeamSplitter& bs);

SweepRecord sweep_point(double m_s, double m_n, double m_sn, double m_sn_prime,
                        const BeamSplitter& bs, double eta);

std::vector<SweepRecord> parametric_sweep(double m_s, double m_n, double m_sn, double m_sn_prime,
                                          const BeamSplitter& bs, std::span<const double> eta_values);

/// M_s from (V, g2) assuming distinguishable noise (M_sn = 0).
double extract_ms(double v_hom, double g2, const BeamSplitter& bs);

/// Inverse of visibility_separable for a known M_sn.
double extract_ms_general(double v_hom, double g2, double m_sn, const BeamSplitter& bs);

}  // namespace hom
