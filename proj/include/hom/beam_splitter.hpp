#pragma once

#include <cmath>

namespace hom {

/// Lossless two-port splitter. Output modes follow
///   a3 = cos(theta) a1 - exp(-i phi) sin(theta) a2
///   a4 = exp(i phi) sin(theta) a1 + cos(theta) a2
/// with reflectivity R = sin^2(theta) and transmittance T = cos^2(theta).
class BeamSplitter {
  public:
    /// Balanced 50:50 splitter.
    BeamSplitter() = default;

    static BeamSplitter from_reflectivity(double reflectivity, double phase = 0.0);
    static BeamSplitter from_angle(double theta, double phase = 0.0);

    double reflectivity() const noexcept { return r_; }
    double transmittance() const noexcept { return t_; }
    double phase() const noexcept { return phi_; }
    double theta() const noexcept { return std::atan2(std::sqrt(r_), std::sqrt(t_)); }
    /// 4RT, the prefactor shared by every visibility formula.
    double four_rt() const noexcept { return 4.0 * r_ * t_; }

  private:
    BeamSplitter(double r, double t, double phi) : r_(r), t_(t), phi_(phi) {}

    double r_ = 0.5;
    double t_ = 0.5;
    double phi_ = 0.0;
};

}  // namespace hom
