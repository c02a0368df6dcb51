#include "hom/kernels.hpp"
#include "hom/random.hpp"
#include "hom/temporal.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace hom;
namespace k = hom::kernels;

namespace {

struct Planes {
    std::vector<double> ar, ai, br, bi, wr, wi;
};

Planes random_planes(std::size_t n, Rng& rng) {
    Planes p;
    for (auto* v : {&p.ar, &p.ai, &p.br, &p.bi, &p.wr, &p.wi}) {
        v->resize(n);
        for (auto& x : *v) x = rng.uniform(-1, 1);
    }
    return p;
}

class IsaGuard {
  public:
    IsaGuard() : saved_(k::active_isa()) {}
    ~IsaGuard() { k::force_isa(saved_); }

  private:
    k::Isa saved_;
};

}  // namespace

TEST(Kernels, ScalarMatchesNaiveComplexSum) {
    Rng rng(11);
    const auto p = random_planes(37, rng);
    std::complex<double> ref = 0.0;
    for (std::size_t i = 0; i < 37; ++i) {
        ref += std::complex<double>(p.ar[i], p.ai[i]) * std::conj(std::complex<double>(p.br[i], p.bi[i])) *
               std::complex<double>(p.wr[i], p.wi[i]);
    }
    const auto got = k::scalar::phased_inner(p.ar, p.ai, p.br, p.bi, p.wr, p.wi);
    EXPECT_NEAR(got.real(), ref.real(), 1e-13);
    EXPECT_NEAR(got.imag(), ref.imag(), 1e-13);
}

TEST(Kernels, Avx2MatchesScalarAllTails) {
    if (!k::isa_available(k::Isa::avx2)) GTEST_SKIP() << "no AVX2 on this CPU";
    Rng rng(5);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto p = random_planes(n, rng);
        const double s = k::scalar::real_inner(p.ar, p.ai, p.br, p.bi);
        const double v = k::avx2::real_inner(p.ar, p.ai, p.br, p.bi);
        EXPECT_NEAR(v, s, 1e-13 * (1.0 + static_cast<double>(n))) << n;
        const auto sc = k::scalar::phased_inner(p.ar, p.ai, p.br, p.bi, p.wr, p.wi);
        const auto vc = k::avx2::phased_inner(p.ar, p.ai, p.br, p.bi, p.wr, p.wi);
        EXPECT_NEAR(vc.real(), sc.real(), 1e-13 * (1.0 + static_cast<double>(n))) << n;
        EXPECT_NEAR(vc.imag(), sc.imag(), 1e-13 * (1.0 + static_cast<double>(n))) << n;
    }
}

TEST(Kernels, DispatchedOverlapAgreesAcrossIsa) {
    if (!k::isa_available(k::Isa::avx2)) GTEST_SKIP() << "no AVX2 on this CPU";
    IsaGuard guard;
    const auto g = build_grid(0, 30, 301);
    const auto a = make_exponential(g, 0.8, 0.2);
    const auto b = make_exponential(g, 0.5, 0.0);
    k::force_isa(k::Isa::scalar);
    const double s0 = mean_wavepacket_overlap(a, b);
    const double s1 = mean_wavepacket_overlap(a, b, {0.4});
    k::force_isa(k::Isa::avx2);
    EXPECT_NEAR(mean_wavepacket_overlap(a, b), s0, 1e-13);
    EXPECT_NEAR(mean_wavepacket_overlap(a, b, {0.4}), s1, 1e-13);
}

TEST(Kernels, EnvironmentSelectsScalar) {
    const char* env = std::getenv("HOM_SIMD");
    if (env == nullptr || std::string(env) != "scalar") GTEST_SKIP() << "HOM_SIMD not set";
    EXPECT_EQ(k::active_isa(), k::Isa::scalar);
}

TEST(Kernels, Names) {
    EXPECT_EQ(k::isa_name(k::Isa::scalar), "scalar");
    EXPECT_EQ(k::isa_name(k::Isa::avx2), "avx2");
    EXPECT_TRUE(k::isa_available(k::Isa::scalar));
}
