#include "hom/error.hpp"
#include "hom/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hom::kernels {

#if !HOM_HAVE_AVX2_TU
namespace avx2 {
bool supported() noexcept { return false; }
double real_inner(std::span<const double>, std::span<const double>, std::span<const double>,
                  std::span<const double>) {
    throw ValidationError("AVX2 kernels are not built for this architecture");
}
std::complex<double> phased_inner(std::span<const double>, std::span<const double>,
                                  std::span<const double>, std::span<const double>,
                                  std::span<const double>, std::span<const double>) {
    throw ValidationError("AVX2 kernels are not built for this architecture");
}
}  // namespace avx2
#endif

namespace {

Isa detect() noexcept {
    if (const char* env = std::getenv("HOM_SIMD"); env != nullptr && std::string(env) == "scalar") {
        return Isa::scalar;
    }
    return avx2::supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2: return avx2::supported();
    }
    return false;
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw ValidationError("instruction set '" + std::string(isa_name(isa)) +
                              "' is not supported on this CPU");
    }
    selected().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

double real_inner(std::span<const double> a_re, std::span<const double> a_im,
                  std::span<const double> b_re, std::span<const double> b_im) {
    if (active_isa() == Isa::avx2) return avx2::real_inner(a_re, a_im, b_re, b_im);
    return scalar::real_inner(a_re, a_im, b_re, b_im);
}

std::complex<double> phased_inner(std::span<const double> a_re, std::span<const double> a_im,
                                  std::span<const double> b_re, std::span<const double> b_im,
                                  std::span<const double> w_re, std::span<const double> w_im) {
    if (active_isa() == Isa::avx2) return avx2::phased_inner(a_re, a_im, b_re, b_im, w_re, w_im);
    return scalar::phased_inner(a_re, a_im, b_re, b_im, w_re, w_im);
}

}  // namespace hom::kernels
