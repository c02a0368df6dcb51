#pragma once

// Discretised two-time density wavefunctions xi(t, t') of one-photon states
// and the overlap integrals over them. All integrals use the midpoint rule on
// a uniform grid; xi carries units of 1/ps so that sum_k xi[k,k] dt = 1.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hom {

struct TimeGrid {
    double t_start = 0.0;  // ps
    double t_end = 1.0;    // ps
    std::size_t n_bins = 1;

    double dt() const noexcept { return (t_end - t_start) / static_cast<double>(n_bins); }
    double center(std::size_t k) const noexcept {
        return t_start + (static_cast<double>(k) + 0.5) * dt();
    }
    std::vector<double> centers() const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

TimeGrid build_grid(double t_start, double t_end, std::size_t n_bins);

/// Relative propagation phase rate (rad/ps), applied as exp(i*rate*(t - t')).
struct PhaseSpec {
    double rate = 0.0;
};

/// xi(t, t') sampled at bin centres, stored as separate real and imaginary
/// row-major planes so the overlap kernels can stream them.
class TemporalDensityMatrix {
  public:
    /// Validates shape, finiteness and Hermiticity (1e-12 relative).
    TemporalDensityMatrix(TimeGrid grid, std::vector<double> re, std::vector<double> im);

    static TemporalDensityMatrix from_function(
        const TimeGrid& grid, const std::function<std::complex<double>(double, double)>& xi);
    /// Pure state xi(t,t') = a(t) conj(a(t')) from per-bin amplitudes.
    static TemporalDensityMatrix from_amplitudes(const TimeGrid& grid,
                                                 std::span<const std::complex<double>> amplitudes);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_.n_bins; }

    std::complex<double> operator()(std::size_t j, std::size_t k) const noexcept {
        return {re_[j * size() + k], im_[j * size() + k]};
    }
    std::span<const double> real_plane() const noexcept { return re_; }
    std::span<const double> imag_plane() const noexcept { return im_; }
    std::span<const double> row_re(std::size_t j) const noexcept {
        return std::span<const double>(re_).subspan(j * size(), size());
    }
    std::span<const double> row_im(std::size_t j) const noexcept {
        return std::span<const double>(im_).subspan(j * size(), size());
    }

    /// sum_k xi[k,k] dt
    double trace() const noexcept;
    /// Diagonal xi(t,t), the time-resolved intensity.
    std::vector<double> intensity() const;

  private:
    TimeGrid grid_;
    std::vector<double> re_;
    std::vector<double> im_;
};

/// Largest |xi[j,k] - conj(xi[k,j])| relative to max |xi|.
double hermiticity_error(const TemporalDensityMatrix& xi);
/// Smallest eigenvalue over largest; PSD within rounding when >= -1e-10.
double min_eigenvalue_ratio(const TemporalDensityMatrix& xi);

/// Monoexponential emitter with Markovian pure dephasing:
/// xi = gamma exp(-gamma (t+t')/2) exp(-gamma_dephasing |t-t'|) for t,t' >= 0.
TemporalDensityMatrix make_exponential(const TimeGrid& grid, double gamma, double gamma_dephasing);

/// Cross-polarised exciton emission, amplitude sin(fss_rate t/2) exp(-gamma t/2),
/// with the same dephasing kernel as make_exponential.
TemporalDensityMatrix make_exciton_beat(const TimeGrid& grid, double gamma, double fss_rate,
                                        double gamma_dephasing);

/// Transform-limited Gaussian pulse; fwhm refers to the intensity profile.
TemporalDensityMatrix make_gaussian_pulse(const TimeGrid& grid, double center, double fwhm);

TemporalDensityMatrix normalize(const TemporalDensityMatrix& xi);

/// xi(t,t') -> xi(t,t') exp(i rate (t - t')).
TemporalDensityMatrix apply_phase(const TemporalDensityMatrix& xi, PhaseSpec phase);

/// Convex combination w*a + (1-w)*b of two normalised states on the same grid.
TemporalDensityMatrix mixture(const TemporalDensityMatrix& a, const TemporalDensityMatrix& b,
                              double weight_a);

/// Tr[rho^2] = double integral of |xi|^2.
double trace_purity(const TemporalDensityMatrix& xi);

/// double integral of Re(xi_a conj(xi_b) exp(i rate (t - t'))).
double mean_wavepacket_overlap(const TemporalDensityMatrix& a, const TemporalDensityMatrix& b,
                               PhaseSpec phase = {});

}  // namespace hom
