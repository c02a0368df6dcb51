#include "hom/temporal.hpp"

#include "hom/error.hpp"
#include "hom/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hom {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kNormalizedTol = 1e-6;
constexpr double kTruncationFraction = 0.99;

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_normalized(const TemporalDensityMatrix& xi, const char* what) {
    const double tr = xi.trace();
    if (!(std::abs(tr - 1.0) <= kNormalizedTol)) {
        throw ValidationError(std::string(what) + ": density matrix is not normalized (trace = " +
                              fmt_num(tr) + ")");
    }
}

void require_same_grid(const TemporalDensityMatrix& a, const TemporalDensityMatrix& b) {
    if (!(a.grid() == b.grid())) {
        throw GridMismatchError("density matrices live on different time grids");
    }
}

// Samples a Hermitian kernel on the grid, checks the pre-normalisation trace
// against its analytic value and normalises.
TemporalDensityMatrix sample_model(const TimeGrid& grid, double analytic_trace, const char* model,
                                   const std::function<std::complex<double>(double, double)>& f) {
    auto raw = TemporalDensityMatrix::from_function(grid, f);
    const double tr = raw.trace();
    if (!(tr >= kTruncationFraction * analytic_trace)) {
        throw TruncationError(std::string(model) + ": grid [" + fmt_num(grid.t_start) + ", " +
                              fmt_num(grid.t_end) + "] ps with " + std::to_string(grid.n_bins) +
                              " bins captures only " + fmt_num(tr / analytic_trace) +
                              " of the wavepacket (grid too short or too coarse)");
    }
    return normalize(raw);
}

}  // namespace

std::vector<double> TimeGrid::centers() const {
    std::vector<double> c(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) c[k] = center(k);
    return c;
}

TimeGrid build_grid(double t_start, double t_end, std::size_t n_bins) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
        throw ValidationError("grid bounds must be finite");
    }
    if (!(t_end > t_start)) {
        throw ValidationError("grid requires t_end > t_start (got " + fmt_num(t_start) + ", " +
                              fmt_num(t_end) + ")");
    }
    if (n_bins == 0) throw ValidationError("grid requires n_bins >= 1");
    return TimeGrid{t_start, t_end, n_bins};
}

TemporalDensityMatrix::TemporalDensityMatrix(TimeGrid grid, std::vector<double> re,
                                             std::vector<double> im)
    : grid_(grid), re_(std::move(re)), im_(std::move(im)) {
    const std::size_t n = grid_.n_bins;
    if (n == 0) throw ValidationError("density matrix needs at least one bin");
    if (re_.size() != n * n || im_.size() != n * n) {
        throw ValidationError("density matrix planes must have n_bins^2 entries");
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
        if (!std::isfinite(re_[i]) || !std::isfinite(im_[i])) {
            throw ValidationError("density matrix contains non-finite entries");
        }
        scale = std::max(scale, std::hypot(re_[i], im_[i]));
    }
    const double tol = kHermitianTol * std::max(scale, 1e-300);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            const std::size_t jk = j * n + k;
            const std::size_t kj = k * n + j;
            if (std::abs(re_[jk] - re_[kj]) > tol || std::abs(im_[jk] + im_[kj]) > tol) {
                throw ValidationError("density matrix is not Hermitian at (" + std::to_string(j) +
                                      ", " + std::to_string(k) + ")");
            }
        }
    }
}

TemporalDensityMatrix TemporalDensityMatrix::from_function(
    const TimeGrid& grid, const std::function<std::complex<double>(double, double)>& xi) {
    const std::size_t n = grid.n_bins;
    std::vector<double> re(n * n);
    std::vector<double> im(n * n);
    const auto t = grid.centers();
    // Fill the upper triangle and mirror so Hermiticity holds bit-exactly.
    for (std::size_t j = 0; j < n; ++j) {
        const auto d = xi(t[j], t[j]);
        re[j * n + j] = d.real();
        im[j * n + j] = 0.0;
        for (std::size_t k = j + 1; k < n; ++k) {
            const auto v = xi(t[j], t[k]);
            re[j * n + k] = v.real();
            im[j * n + k] = v.imag();
            re[k * n + j] = v.real();
            im[k * n + j] = -v.imag();
        }
    }
    return TemporalDensityMatrix(grid, std::move(re), std::move(im));
}

TemporalDensityMatrix TemporalDensityMatrix::from_amplitudes(
    const TimeGrid& grid, std::span<const std::complex<double>> amplitudes) {
    const std::size_t n = grid.n_bins;
    if (amplitudes.size() != n) throw ValidationError("amplitude count must equal n_bins");
    std::vector<double> re(n * n);
    std::vector<double> im(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = amplitudes[j] * std::conj(amplitudes[k]);
            re[j * n + k] = v.real();
            im[j * n + k] = j == k ? 0.0 : v.imag();
        }
    }
    return TemporalDensityMatrix(grid, std::move(re), std::move(im));
}

double TemporalDensityMatrix::trace() const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < size(); ++k) s += re_[k * size() + k];
    return s * grid_.dt();
}

std::vector<double> TemporalDensityMatrix::intensity() const {
    std::vector<double> d(size());
    for (std::size_t k = 0; k < size(); ++k) d[k] = re_[k * size() + k];
    return d;
}

double hermiticity_error(const TemporalDensityMatrix& xi) {
    const std::size_t n = xi.size();
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            scale = std::max(scale, std::abs(xi(j, k)));
            err = std::max(err, std::abs(xi(j, k) - std::conj(xi(k, j))));
        }
    }
    return scale > 0.0 ? err / scale : err;
}

double min_eigenvalue_ratio(const TemporalDensityMatrix& xi) {
    const auto n = static_cast<Eigen::Index>(xi.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            m(j, k) = xi(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    const double top = ev.maxCoeff();
    if (top <= 0.0) return ev.minCoeff() < 0.0 ? -1.0 : 0.0;
    return ev.minCoeff() / top;
}

TemporalDensityMatrix make_exponential(const TimeGrid& grid, double gamma, double gamma_dephasing) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("gamma must be positive (got " + fmt_num(gamma) + ")");
    }
    if (!(gamma_dephasing >= 0.0) || !std::isfinite(gamma_dephasing)) {
        throw ValidationError("gamma_dephasing must be non-negative (got " +
                              fmt_num(gamma_dephasing) + ")");
    }
    return sample_model(grid, 1.0, "exponential", [=](double t, double tp) -> std::complex<double> {
        if (t < 0.0 || tp < 0.0) return 0.0;
        return gamma * std::exp(-0.5 * gamma * (t + tp)) * std::exp(-gamma_dephasing * std::abs(t - tp));
    });
}

TemporalDensityMatrix make_exciton_beat(const TimeGrid& grid, double gamma, double fss_rate,
                                        double gamma_dephasing) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("gamma must be positive (got " + fmt_num(gamma) + ")");
    }
    if (!(fss_rate > 0.0) || !std::isfinite(fss_rate)) {
        throw ValidationError("fss_rate must be positive (got " + fmt_num(fss_rate) + ")");
    }
    if (!(gamma_dephasing >= 0.0) || !std::isfinite(gamma_dephasing)) {
        throw ValidationError("gamma_dephasing must be non-negative (got " +
                              fmt_num(gamma_dephasing) + ")");
    }
    // integral of sin^2(W t/2) exp(-g t) over t >= 0
    const double analytic =
        fss_rate * fss_rate / (2.0 * gamma * (gamma * gamma + fss_rate * fss_rate));
    auto amp = [=](double t) {
        return t < 0.0 ? 0.0 : std::sin(0.5 * fss_rate * t) * std::exp(-0.5 * gamma * t);
    };
    return sample_model(grid, analytic, "exciton", [=](double t, double tp) -> std::complex<double> {
        return amp(t) * amp(tp) * std::exp(-gamma_dephasing * std::abs(t - tp));
    });
}

TemporalDensityMatrix make_gaussian_pulse(const TimeGrid& grid, double center, double fwhm) {
    if (!(fwhm > 0.0) || !std::isfinite(fwhm)) {
        throw ValidationError("fwhm must be positive (got " + fmt_num(fwhm) + ")");
    }
    if (!std::isfinite(center)) throw ValidationError("center must be finite");
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    const double analytic = sigma * std::sqrt(2.0 * std::numbers::pi);
    auto amp = [=](double t) {
        const double u = t - center;
        return std::exp(-u * u / (4.0 * sigma * sigma));
    };
    return sample_model(grid, analytic, "gaussian", [=](double t, double tp) -> std::complex<double> {
        return amp(t) * amp(tp);
    });
}

TemporalDensityMatrix normalize(const TemporalDensityMatrix& xi) {
    const double tr = xi.trace();
    if (!(tr > 0.0)) {
        throw ValidationError("cannot normalize a density matrix with trace " + fmt_num(tr));
    }
    std::vector<double> re(xi.real_plane().begin(), xi.real_plane().end());
    std::vector<double> im(xi.imag_plane().begin(), xi.imag_plane().end());
    for (auto& v : re) v /= tr;
    for (auto& v : im) v /= tr;
    return TemporalDensityMatrix(xi.grid(), std::move(re), std::move(im));
}

TemporalDensityMatrix apply_phase(const TemporalDensityMatrix& xi, PhaseSpec phase) {
    if (!std::isfinite(phase.rate)) throw ValidationError("phase rate must be finite");
    const std::size_t n = xi.size();
    const auto& g = xi.grid();
    std::vector<double> re(n * n);
    std::vector<double> im(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double arg = phase.rate * (g.center(j) - g.center(k));
            const auto v = xi(j, k) * std::polar(1.0, arg);
            re[j * n + k] = v.real();
            im[j * n + k] = j == k ? 0.0 : v.imag();
        }
    }
    return TemporalDensityMatrix(g, std::move(re), std::move(im));
}

TemporalDensityMatrix mixture(const TemporalDensityMatrix& a, const TemporalDensityMatrix& b,
                              double weight_a) {
    require_same_grid(a, b);
    if (!(weight_a >= 0.0 && weight_a <= 1.0)) {
        throw ValidationError("mixture weight must lie in [0, 1]");
    }
    const auto ar = a.real_plane();
    const auto ai = a.imag_plane();
    const auto br = b.real_plane();
    const auto bi = b.imag_plane();
    std::vector<double> re(ar.size());
    std::vector<double> im(ar.size());
    for (std::size_t i = 0; i < ar.size(); ++i) {
        re[i] = weight_a * ar[i] + (1.0 - weight_a) * br[i];
        im[i] = weight_a * ai[i] + (1.0 - weight_a) * bi[i];
    }
    return TemporalDensityMatrix(a.grid(), std::move(re), std::move(im));
}

double trace_purity(const TemporalDensityMatrix& xi) {
    require_normalized(xi, "trace_purity");
    return mean_wavepacket_overlap(xi, xi, PhaseSpec{});
}

double mean_wavepacket_overlap(const TemporalDensityMatrix& a, const TemporalDensityMatrix& b,
                               PhaseSpec phase) {
    require_same_grid(a, b);
    require_normalized(a, "mean_wavepacket_overlap");
    require_normalized(b, "mean_wavepacket_overlap");
    if (!std::isfinite(phase.rate)) throw ValidationError("phase rate must be finite");

    const std::size_t n = a.size();
    const auto& g = a.grid();
    const double dt = g.dt();
    double sum = 0.0;
    if (phase.rate == 0.0) {
        for (std::size_t j = 0; j < n; ++j) {
            sum += kernels::real_inner(a.row_re(j), a.row_im(j), b.row_re(j), b.row_im(j));
        }
    } else {
        // exp(i r (t_j - t_k)) = u_j conj(u_k); times are taken relative to the
        // grid start to keep the phase arguments small.
        std::vector<double> w_re(n);
        std::vector<double> w_im(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double arg = -phase.rate * (g.center(k) - g.t_start);
            w_re[k] = std::cos(arg);
            w_im[k] = std::sin(arg);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto row = kernels::phased_inner(a.row_re(j), a.row_im(j), b.row_re(j),
                                                   b.row_im(j), w_re, w_im);
            const auto u = std::polar(1.0, phase.rate * (g.center(j) - g.t_start));
            sum += (u * row).real();
        }
    }
    return sum * dt * dt;
}

}  // namespace hom
