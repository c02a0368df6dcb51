#include "hom/error.hpp"
#include "hom/random.hpp"
#include "hom/temporal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace hom;

namespace {

// |int a(t) conj(b(t)) dt|^2 by a plain loop over analytic amplitudes.
template <class A, class B>
double pure_overlap(const TimeGrid& g, A a, B b) {
    std::complex<double> s = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < g.n_bins; ++k) {
        const double t = g.center(k);
        s += std::complex<double>(a(t)) * std::conj(std::complex<double>(b(t)));
        na += std::norm(std::complex<double>(a(t)));
        nb += std::norm(std::complex<double>(b(t)));
    }
    return std::norm(s) / (na * nb);
}

TemporalDensityMatrix random_pure(const TimeGrid& g, Rng& rng) {
    std::vector<std::complex<double>> amp(g.n_bins);
    for (auto& a : amp) a = {rng.normal(), rng.normal()};
    return normalize(TemporalDensityMatrix::from_amplitudes(g, amp));
}

}  // namespace

TEST(TimeGrid, Arithmetic) {
    EXPECT_DOUBLE_EQ(build_grid(0, 1000, 1000).dt(), 1.0);
    const auto single = build_grid(0, 10, 1);
    EXPECT_DOUBLE_EQ(single.dt(), 10.0);
    EXPECT_DOUBLE_EQ(single.center(0), 5.0);
    EXPECT_EQ(build_grid(0, 800, 4096).dt(), 0.1953125);
}

TEST(TimeGrid, RejectsBadBounds) {
    EXPECT_THROW(build_grid(0, 1, 0), ValidationError);
    EXPECT_THROW(build_grid(1, 1, 4), ValidationError);
    EXPECT_THROW(build_grid(2, 1, 4), ValidationError);
    EXPECT_THROW(build_grid(0, INFINITY, 4), ValidationError);
    EXPECT_THROW(build_grid(NAN, 1, 4), ValidationError);
}

TEST(DensityMatrix, RejectsNonHermitian) {
    const auto g = build_grid(0, 2, 2);
    EXPECT_THROW(TemporalDensityMatrix(g, {1, 0.5, 0.4, 1}, {0, 0, 0, 0}), ValidationError);
    EXPECT_THROW(TemporalDensityMatrix(g, {1, 0, 0, 1}, {0.1, 0, 0, 0}), ValidationError);
    EXPECT_THROW(TemporalDensityMatrix(g, {1, 0, 0}, {0, 0, 0}), ValidationError);
    EXPECT_NO_THROW(TemporalDensityMatrix(g, {1, 0.5, 0.5, 1}, {0, 0.2, -0.2, 0}));
}

TEST(Exponential, TrionIsPure) {
    const auto g = build_grid(0, 3400, 1700);
    const auto xi = make_exponential(g, 1.0 / 170.0, 0.0);
    EXPECT_NEAR(xi.trace(), 1.0, 1e-12);
    EXPECT_NEAR(trace_purity(xi), 1.0, 1e-6);
    EXPECT_LT(hermiticity_error(xi), 1e-12);
    EXPECT_GE(min_eigenvalue_ratio(make_exponential(build_grid(0, 40, 200), 1.0, 0.3)), -1e-10);
}

TEST(Exponential, DephasedPurityClosedForm) {
    const double gamma = 1.0;
    const auto mild = make_exponential(build_grid(0, 20, 2048), gamma, 0.5);
    EXPECT_NEAR(trace_purity(mild), 0.5, 1e-4);
    // Near the fast-dephasing limit the kernel is only a few bins wide.
    const double expect = gamma / (gamma + 200.0);
    const auto fast = make_exponential(build_grid(0, 12, 4096), gamma, 100.0);
    EXPECT_NEAR(trace_purity(fast), expect, 0.05 * expect);
    EXPECT_NEAR(expect, 0.005, 1e-4);
}

TEST(Exponential, ConvergesUnderRefinement) {
    const double expect = 0.5;
    double prev = 1.0;
    for (std::size_t n : {256, 512, 1024, 2048}) {
        const double err = std::abs(trace_purity(make_exponential(build_grid(0, 20, n), 1.0, 0.5)) - expect);
        if (prev > 1e-6) {
            EXPECT_LE(err, 0.5 * prev) << n;
        }
        prev = err;
    }
}

TEST(Exponential, Errors) {
    const auto g = build_grid(0, 100, 100);
    EXPECT_THROW(make_exponential(g, 0.0, 0.0), ValidationError);
    EXPECT_THROW(make_exponential(g, -1.0, 0.0), ValidationError);
    EXPECT_THROW(make_exponential(g, 1.0, -0.1), ValidationError);
    EXPECT_THROW(make_exponential(build_grid(0, 100, 100), 1.0 / 170.0, 0.0), TruncationError);
    try {
        make_exponential(g, -2.0, 0.0);
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
    }
}

TEST(ExcitonBeat, PureAndZeroAtBeat) {
    const double gamma = 1.0 / 150.0;
    const double fss = 0.0228;
    const double t0 = 2.0 * std::numbers::pi / fss;
    // Place a bin centre exactly on the first zero.
    const std::size_t n = 3000;
    const double dt = 1.0;
    const double start = t0 - (std::floor(t0 / dt) + 0.5) * dt;
    const auto g = build_grid(start, start + n * dt, n);
    const auto xi = make_exciton_beat(g, gamma, fss, 0.0);
    EXPECT_NEAR(trace_purity(xi), 1.0, 1e-6);
    const auto k = static_cast<std::size_t>(std::lround((t0 - g.t_start) / dt - 0.5));
    ASSERT_NEAR(g.center(k), t0, 1e-9);
    EXPECT_NEAR(xi(k, k).real(), 0.0, 1e-12);
    EXPECT_GT(xi(k / 2, k / 2).real(), 1e-4);
    EXPECT_THROW(make_exciton_beat(g, gamma, 0.0, 0.0), ValidationError);
}

TEST(ExcitonBeat, SmallOverlapWithLaser) {
    const auto g = build_grid(-100, 1500, 1600);
    const auto x = make_exciton_beat(g, 1.0 / 150.0, 0.0228, 0.0);
    const auto p = make_gaussian_pulse(g, 0.0, 15.0);
    const double m = mean_wavepacket_overlap(x, p);
    const double sigma = 15.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double oracle = pure_overlap(
        g, [](double t) { return t < 0 ? 0.0 : std::sin(0.0114 * t) * std::exp(-t / 300.0); },
        [&](double t) { return std::exp(-t * t / (4 * sigma * sigma)); });
    EXPECT_NEAR(m, oracle, 1e-9);
    EXPECT_LT(m, 0.05);
}

TEST(Gaussian, PureSelfOverlapAndOffset) {
    const auto g = build_grid(-200, 200, 800);
    const auto a = make_gaussian_pulse(g, -30, 12);
    EXPECT_NEAR(trace_purity(a), 1.0, 1e-9);
    EXPECT_NEAR(mean_wavepacket_overlap(a, a), 1.0, 1e-9);
    const double fwhm = 12.0;
    const auto b = make_gaussian_pulse(g, -30 + 5 * fwhm, fwhm);
    const double closed = std::exp(-25.0 * 4.0 * std::log(2.0) / 2.0);
    EXPECT_LT(mean_wavepacket_overlap(a, b), 1e-5);
    EXPECT_NEAR(mean_wavepacket_overlap(a, b), closed, 1e-9);
    EXPECT_THROW(make_gaussian_pulse(g, 195, 12), TruncationError);
    EXPECT_THROW(make_gaussian_pulse(g, 0, 0), ValidationError);
}

TEST(Normalize, ScaleIdempotenceSingleBin) {
    const auto g = build_grid(0, 30, 60);
    const auto xi = make_exponential(g, 0.5, 0.1);
    std::vector<double> re(xi.real_plane().begin(), xi.real_plane().end());
    std::vector<double> im(xi.imag_plane().begin(), xi.imag_plane().end());
    for (auto& v : re) v *= 7;
    for (auto& v : im) v *= 7;
    const auto back = normalize(TemporalDensityMatrix(g, re, im));
    const auto same = normalize(xi);
    for (std::size_t i = 0; i < re.size(); ++i) {
        EXPECT_NEAR(back.real_plane()[i], xi.real_plane()[i], 1e-14);
        EXPECT_NEAR(same.real_plane()[i], xi.real_plane()[i], 1e-14);
    }
    EXPECT_NEAR(back.trace(), 1.0, 1e-12);

    const auto one = build_grid(0, 4, 1);
    const auto n1 = normalize(TemporalDensityMatrix(one, {3.0}, {0.0}));
    EXPECT_DOUBLE_EQ(n1(0, 0).real(), 0.25);
    EXPECT_THROW(normalize(TemporalDensityMatrix(one, {0.0}, {0.0})), ValidationError);
}

TEST(Purity, RejectsUnnormalized) {
    const auto g = build_grid(0, 4, 1);
    EXPECT_THROW(trace_purity(TemporalDensityMatrix(g, {3.0}, {0.0})), ValidationError);
}

TEST(Purity, OrthogonalMixtureIsHalf) {
    const auto g = build_grid(-100, 300, 800);
    const auto a = make_gaussian_pulse(g, 0, 10);
    const auto b = make_gaussian_pulse(g, 150, 10);
    EXPECT_NEAR(trace_purity(mixture(a, b, 0.5)), 0.5, 1e-6);
}

TEST(Overlap, DetunedExponentials) {
    const double gamma = 1.0;
    const double delta = 1.0;
    const auto g = build_grid(0, 40, 4000);
    const auto a = make_exponential(g, gamma, 0.0);
    EXPECT_NEAR(mean_wavepacket_overlap(a, a, {delta}), gamma * gamma / (gamma * gamma + delta * delta), 1e-4);
}

TEST(Overlap, DisjointAndMismatch) {
    const auto g = build_grid(0, 100, 100);
    std::vector<std::complex<double>> l(100, 0.0), r(100, 0.0);
    for (int k = 0; k < 30; ++k) l[k] = 1.0;
    for (int k = 60; k < 100; ++k) r[k] = {0.0, 1.0};
    const auto a = normalize(TemporalDensityMatrix::from_amplitudes(g, l));
    const auto b = normalize(TemporalDensityMatrix::from_amplitudes(g, r));
    EXPECT_NEAR(mean_wavepacket_overlap(a, b), 0.0, 1e-12);
    const auto other = make_gaussian_pulse(build_grid(-50, 50, 100), 0, 10);
    EXPECT_THROW(mean_wavepacket_overlap(a, other), GridMismatchError);
}

TEST(Overlap, CauchySchwarzAndSymmetry) {
    Rng rng(42);
    const auto g = build_grid(0, 12, 24);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = mixture(random_pure(g, rng), random_pure(g, rng), rng.uniform());
        const auto b = mixture(random_pure(g, rng), random_pure(g, rng), rng.uniform());
        const double m = mean_wavepacket_overlap(a, b);
        EXPECT_LE(m * m, trace_purity(a) * trace_purity(b) + 1e-9);
        EXPECT_NEAR(m, mean_wavepacket_overlap(b, a), 1e-14);
        EXPECT_EQ(trace_purity(a), mean_wavepacket_overlap(a, a, {}));
    }
}

TEST(Purity, InvariantUnderDiagonalPhase) {
    Rng rng(7);
    const auto g = build_grid(0, 10, 40);
    const auto xi = mixture(random_pure(g, rng), random_pure(g, rng), 0.3);
    std::vector<double> phi(g.n_bins);
    for (auto& p : phi) p = rng.uniform(0, 2 * std::numbers::pi);
    const auto rotated = TemporalDensityMatrix::from_function(g, [&](double t, double tp) {
        const auto j = static_cast<std::size_t>(std::floor((t - g.t_start) / g.dt()));
        const auto k = static_cast<std::size_t>(std::floor((tp - g.t_start) / g.dt()));
        return xi(j, k) * std::polar(1.0, phi[j] - phi[k]);
    });
    EXPECT_NEAR(trace_purity(rotated), trace_purity(xi), 1e-12);
}

TEST(ApplyPhase, MatchesPhasedOverlap) {
    Rng rng(3);
    const auto g = build_grid(-5, 5, 32);
    const auto a = random_pure(g, rng);
    const auto b = mixture(random_pure(g, rng), random_pure(g, rng), 0.6);
    const double r = 0.7;
    EXPECT_NEAR(mean_wavepacket_overlap(apply_phase(a, {r}), b), mean_wavepacket_overlap(a, b, {r}), 1e-13);
}
