#pragma once

// Inner-product kernels behind the wavepacket overlap integrals.
//
// Every kernel exists as a scalar reference implementation and, on x86-64,
// as an AVX2/FMA variant. The dispatched entry points pick the widest
// variant the running CPU supports; HOM_SIMD=scalar in the environment
// forces the reference path.

#include <complex>
#include <span>
#include <string_view>

namespace hom::kernels {

enum class Isa { scalar, avx2 };

/// sum_k a_re[k]*b_re[k] + a_im[k]*b_im[k], i.e. Re(sum_k a_k conj(b_k)).
double real_inner(std::span<const double> a_re, std::span<const double> a_im,
                  std::span<const double> b_re, std::span<const double> b_im);

/// sum_k a_k conj(b_k) w_k over complex planes.
std::complex<double> phased_inner(std::span<const double> a_re, std::span<const double> a_im,
                                  std::span<const double> b_re, std::span<const double> b_im,
                                  std::span<const double> w_re, std::span<const double> w_im);

Isa active_isa() noexcept;
bool isa_available(Isa isa) noexcept;
/// Pin the dispatched variant. Throws ValidationError if the CPU lacks it.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

namespace scalar {
double real_inner(std::span<const double> a_re, std::span<const double> a_im,
                  std::span<const double> b_re, std::span<const double> b_im);
std::complex<double> phased_inner(std::span<const double> a_re, std::span<const double> a_im,
                                  std::span<const double> b_re, std::span<const double> b_im,
                                  std::span<const double> w_re, std::span<const double> w_im);
}  // namespace scalar

namespace avx2 {
bool supported() noexcept;
double real_inner(std::span<const double> a_re, std::span<const double> a_im,
                  std::span<const double> b_re, std::span<const double> b_im);
std::complex<double> phased_inner(std::span<const double> a_re, std::span<const double> a_im,
                                  std::span<const double> b_re, std::span<const double> b_im,
                                  std::span<const double> w_re, std::span<const double> w_im);
}  // namespace avx2

}  // namespace hom::kernels
