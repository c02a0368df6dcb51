#include "hom/analytics.hpp"
#include "hom/error.hpp"
#include "hom/noise_mixer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hom;

namespace {

constexpr double kPi = std::numbers::pi;

const TimeGrid& grid() {
    static const TimeGrid g = build_grid(-100, 300, 400);
    return g;
}

TemporalDensityMatrix pulse(double c) { return make_gaussian_pulse(grid(), c, 12.0); }

bool has(const std::vector<Warning>& w, Warning x) { return std::find(w.begin(), w.end(), x) != w.end(); }

}  // namespace

TEST(SourceState, Invariants) {
    const auto s = SourceState::make(0.3, pulse(0));
    EXPECT_NEAR(s.p_vac + s.p_one, 1.0, 1e-12);
    EXPECT_THROW(SourceState::make(1.2, pulse(0)), ValidationError);
    EXPECT_THROW(SourceState::make(-0.1, pulse(0)), ValidationError);
}

TEST(MixAngle, Range) {
    EXPECT_NO_THROW(MixAngle(0.0));
    EXPECT_NO_THROW(MixAngle(kPi / 2));
    EXPECT_THROW(MixAngle(-0.01), ValidationError);
    EXPECT_THROW(MixAngle(2.0), ValidationError);
}

TEST(MixSources, NoNoise) {
    const double th = 0.4;
    const auto r = mix_sources(SourceState::make(0.8, pulse(0)), SourceState::make(0.0, pulse(150)), MixAngle(th));
    EXPECT_DOUBLE_EQ(r.g2, 0.0);
    EXPECT_NEAR(r.m_tot, r.m_s, 1e-12);
    EXPECT_NEAR(r.mu, 0.8 * std::cos(th) * std::cos(th), 1e-15);
    EXPECT_DOUBLE_EQ(r.eta, 0.0);
}

TEST(MixSources, WeakDistinguishableNoise) {
    const auto r = mix_sources(SourceState::make(1.0, pulse(0)), SourceState::make(0.1, pulse(200)), MixAngle(kPi / 4));
    EXPECT_NEAR(r.m_sn, 0.0, 1e-12);
    EXPECT_NEAR(r.mu, 0.55, 1e-15);
    EXPECT_NEAR(r.g2, 0.05 / 0.3025, 1e-12);
    EXPECT_NEAR(r.p0 + r.p1 + r.p2, 1.0, 1e-12);
    EXPECT_NEAR(r.mu, r.p1 + 2 * r.p2, 1e-12);
    EXPECT_NEAR(r.g2, 2 * r.p2 / (r.mu * r.mu), 1e-12);
    EXPECT_NEAR(r.eta, std::acos(std::sqrt(10.0 / 11.0)), 1e-12);
}

TEST(MixSources, TwoIdenticalPhotons) {
    const auto r = mix_sources(SourceState::make(1.0, pulse(0)), SourceState::make(1.0, pulse(0)), MixAngle(kPi / 4));
    EXPECT_NEAR(r.mu, 1.0, 1e-15);
    EXPECT_NEAR(r.g2, 1.0, 1e-9);
    EXPECT_NEAR(r.m_tot, 1.0, 1e-9);
    EXPECT_TRUE(has(r.warnings, Warning::high_g2));
}

TEST(MixSources, Errors) {
    const auto other = make_gaussian_pulse(build_grid(-100, 100, 200), 0, 12);
    EXPECT_THROW(mix_sources(SourceState::make(1, pulse(0)), SourceState::make(1, other), MixAngle(0.3)), GridMismatchError);
    EXPECT_THROW(mix_sources(SourceState::make(0, pulse(0)), SourceState::make(0, pulse(0)), MixAngle(0.3)), ValidationError);
}

TEST(MixSources, WarnsWhenNoiseOverlapExceedsSignalPurity) {
    const auto mixed = mixture(pulse(0), pulse(150), 0.7);
    const auto r = mix_sources(SourceState::make(1.0, mixed), SourceState::make(0.05, pulse(0)), MixAngle(0.2));
    EXPECT_NEAR(r.m_s, 0.58, 1e-9);
    EXPECT_NEAR(r.m_sn, 0.7, 1e-9);
    EXPECT_TRUE(has(r.warnings, Warning::msn_exceeds_ms));
    const auto r2 = mix_sources(SourceState::make(1.0, mixed), SourceState::make(0.05, mixed), MixAngle(0.2));
    EXPECT_FALSE(has(r2.warnings, Warning::msn_exceeds_ms));
}

TEST(EtaOf, Limits) {
    EXPECT_DOUBLE_EQ(eta_of(1.0, 0.0, MixAngle(0.7)), 0.0);
    EXPECT_NEAR(eta_of(0.0, 1.0, MixAngle(0.7)), kPi / 2, 1e-15);
    EXPECT_NEAR(std::pow(std::cos(eta_of(1.0, 0.1, MixAngle(kPi / 4))), 2), 0.5 / 0.55, 1e-14);
    EXPECT_THROW(eta_of(0.0, 0.0, MixAngle(0.7)), ValidationError);
}

TEST(MixSources, EtaSufficiency) {
    // (p_s, p_n, theta) chosen so that p_n tan^2 theta / p_s is the same.
    const auto s = pulse(0);
    const auto n = mixture(pulse(10), pulse(180), 0.5);
    const double t1 = 0.3;
    const double ratio = 0.4 * std::tan(t1) * std::tan(t1) / 0.9;
    const double t2 = std::atan(std::sqrt(ratio * 0.5 / 0.2));
    const auto a = mix_sources(SourceState::make(0.9, s), SourceState::make(0.4, n), MixAngle(t1));
    const auto b = mix_sources(SourceState::make(0.5, s), SourceState::make(0.2, n), MixAngle(t2));
    EXPECT_NEAR(a.eta, b.eta, 1e-12);
    EXPECT_NEAR(a.g2, b.g2, 1e-12);
    EXPECT_NEAR(a.m_tot, b.m_tot, 1e-12);
}

TEST(MixSources, ParametricFormsAndConsistency) {
    const auto s = mixture(pulse(0), pulse(3), 0.7);
    const auto n = pulse(5);
    for (double th : {0.05, 0.3, 0.7, 1.2}) {
        const auto r = mix_sources(SourceState::make(0.85, s), SourceState::make(0.6, n), MixAngle(th));
        const double c2 = std::pow(std::cos(r.eta), 2);
        const double s2 = std::pow(std::sin(r.eta), 2);
        EXPECT_NEAR(r.g2, 2 * (1 + r.m_sn) * c2 * s2, 1e-12);
        const double mt = r.m_s * c2 * c2 + r.m_n * s2 * s2 + 2 * r.m_sn_prime * c2 * s2;
        EXPECT_NEAR(r.m_tot, mt, 1e-12);
        const auto bs = BeamSplitter::from_reflectivity(0.45);
        const auto rec = sweep_point(r.m_s, r.m_n, r.m_sn, r.m_sn_prime, bs, r.eta);
        EXPECT_NEAR(visibility_balanced(r.m_tot, r.g2, bs), rec.v_hom, 1e-12);
        EXPECT_NEAR(rec.g2, r.g2, 1e-12);
    }
}

TEST(MixSources, G2PeaksAtQuarterPi) {
    const double msn = 0.3;
    double best = -1;
    double arg = 0;
    for (int i = 0; i <= 2000; ++i) {
        const double eta = kPi / 2 * i / 2000.0;
        const double g = 2 * (1 + msn) * std::pow(std::cos(eta) * std::sin(eta), 2);
        if (g > best) best = g, arg = eta;
    }
    EXPECT_NEAR(arg, kPi / 4, 1e-3);
    EXPECT_NEAR(best, (1 + msn) / 2, 1e-12);
    const auto bs = BeamSplitter();
    EXPECT_NEAR(sweep_point(0.9, 1.0, msn, msn, bs, kPi / 4).g2, (1 + msn) / 2, 1e-15);
}
