#include "hom/error.hpp"
#include "hom/histogram.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace hom;
using namespace hom::hist;

namespace {

Histogram comb(double side, double center, std::optional<std::uint64_t> seed = std::nullopt) {
    CombSpec spec;
    spec.side_area = side;
    spec.center_area = center;
    spec.poisson_seed = seed;
    return synthesize_comb(spec);
}

}  // namespace

TEST(Ingest, WellFormedWithHeaderAndComments) {
    std::istringstream in("time_ns,counts\n# comment\n0.0,5\n0.5,7\n1.0;0\n1.5\t3\n");
    const auto h = ingest_histogram(in);
    EXPECT_EQ(h.counts.size(), 4u);
    EXPECT_EQ(h.total(), 15u);
    EXPECT_DOUBLE_EQ(h.center(1), 0.5);
    EXPECT_DOUBLE_EQ(h.bin_edges.front(), -0.25);
}

TEST(Ingest, NegativeCountNamesLine) {
    std::istringstream in("0,1\n1,2\n2,-4\n");
    try {
        ingest_histogram(in);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Ingest, Errors) {
    std::istringstream empty("");
    EXPECT_THROW(ingest_histogram(empty), ParseError);
    std::istringstream nonmono("0,1\n1,2\n1,3\n");
    EXPECT_THROW(ingest_histogram(nonmono), ParseError);
    std::istringstream frac("0,1\n1,2.5\n");
    EXPECT_THROW(ingest_histogram(frac), ParseError);
    EXPECT_THROW(ingest_histogram(std::filesystem::path("/nonexistent/h.csv")), IoError);
}

TEST(Ingest, RoundTripsThroughWriter) {
    const auto h = comb(300, 20, 4);
    std::stringstream ss;
    write_histogram_csv(ss, h);
    const auto back = ingest_histogram(ss);
    EXPECT_EQ(back.counts, h.counts);
    for (std::size_t i = 0; i < h.counts.size(); ++i) EXPECT_NEAR(back.center(i), h.center(i), 1e-12);
}

TEST(Peaks, ConstructedComb) {
    const auto p = integrate_peaks(comb(1000, 50), RepRateConfig{});
    EXPECT_DOUBLE_EQ(p.a0, 50.0);
    EXPECT_DOUBLE_EQ(p.a_uncor, 1000.0);
    EXPECT_GE(p.n_side_peaks, 2u);
    EXPECT_DOUBLE_EQ(p.window_ns, 6.25);
    EXPECT_DOUBLE_EQ(integrate_peaks(comb(1000, 0), RepRateConfig{}).a0, 0.0);
}

TEST(Peaks, AdjacentPeaksExcludedByDefault) {
    CombSpec spec;
    spec.side_area = 1000;
    spec.adjacent_area = 1500;
    const auto h = synthesize_comb(spec);
    EXPECT_DOUBLE_EQ(integrate_peaks(h, RepRateConfig{}).a_uncor, 1000.0);
    auto k1 = RepRateConfig{};
    k1.k_min = 1;
    EXPECT_GT(integrate_peaks(h, k1).a_uncor, 1000.0);
}

TEST(Peaks, PoissonMeanWithin3Sigma) {
    const double mean = 2000;
    const auto p = integrate_peaks(comb(mean, 0, 99), RepRateConfig{});
    const double sigma = std::sqrt(mean / static_cast<double>(p.n_side_peaks));
    EXPECT_LT(std::abs(p.a_uncor - mean), 3 * sigma);
}

TEST(Peaks, TooFewSidePeaks) {
    CombSpec spec;
    spec.peaks_each_side = 1;
    EXPECT_THROW(integrate_peaks(synthesize_comb(spec), RepRateConfig{}), ValidationError);
    RepRateConfig bad;
    bad.window_ns = 13;
    EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Peaks, WindowMonotone) {
    const auto h = comb(800, 120, 3);
    double a0 = -1;
    double au = -1;
    for (double w : {0.5, 1.0, 2.0, 4.0, 6.25, 10.0}) {
        const auto p = integrate_peaks(h, RepRateConfig::with_defaults(12.5, 0.0, w));
        EXPECT_GE(p.a0, a0);
        EXPECT_GE(p.a_uncor, au);
        a0 = p.a0;
        au = p.a_uncor;
    }
}

TEST(Estimates, G2) {
    EXPECT_DOUBLE_EQ(g2_from_histogram({50, 1000, 4, 6.25}).value, 0.05);
    const auto z = g2_from_histogram({0, 1000, 4, 6.25});
    EXPECT_DOUBLE_EQ(z.value, 0.0);
    EXPECT_DOUBLE_EQ(z.sigma, 0.0);
    const auto e = g2_from_histogram({100, 1000, 10, 6.25});
    EXPECT_DOUBLE_EQ(e.value, 0.1);
    EXPECT_NEAR(e.sigma, 0.1 * std::sqrt(0.01 + 0.0001), 1e-15);
    EXPECT_NEAR(e.sigma, 0.01005, 1e-5);
    EXPECT_THROW(g2_from_histogram({1, 0, 4, 6.25}), ValidationError);
}

TEST(Estimates, Visibility) {
    EXPECT_DOUBLE_EQ(vhom_from_histogram({100, 1000, 4, 6.25}).value, 0.8);
    EXPECT_DOUBLE_EQ(vhom_from_histogram({0, 1000, 4, 6.25}).value, 1.0);
    EXPECT_DOUBLE_EQ(vhom_from_histogram({500, 1000, 4, 6.25}).value, 0.0);
    const auto e = vhom_from_histogram({100, 1000, 10, 6.25});
    EXPECT_NEAR(e.sigma, 2 * 0.1 * std::sqrt(0.01 + 0.0001), 1e-15);
    EXPECT_THROW(vhom_from_histogram({1, 0, 4, 6.25}), ValidationError);
}

TEST(Estimates, ScaleInvariance) {
    const auto h = comb(500, 40, 8);
    auto scaled = h;
    for (auto& c : scaled.counts) c *= 9;
    const auto p1 = integrate_peaks(h, RepRateConfig{});
    const auto p9 = integrate_peaks(scaled, RepRateConfig{});
    EXPECT_NEAR(g2_from_histogram(p9).value, g2_from_histogram(p1).value, 1e-15);
    EXPECT_NEAR(vhom_from_histogram(p9).value, vhom_from_histogram(p1).value, 1e-15);
    EXPECT_NEAR(g2_from_histogram(p9).sigma, g2_from_histogram(p1).sigma / 3.0, 1e-15);
}

TEST(Synthesis, ExactAreasAndDeterminism) {
    const auto a = comb(777, 33);
    EXPECT_EQ(integrate_peaks(a, RepRateConfig{}).a0, 33.0);
    EXPECT_EQ(comb(400, 10, 5).counts, comb(400, 10, 5).counts);
}
