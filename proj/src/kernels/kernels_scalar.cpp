#include "hom/kernels.hpp"

#include <cstddef>

namespace hom::kernels::scalar {

double real_inner(std::span<const double> a_re, std::span<const double> a_im,
                  std::span<const double> b_re, std::span<const double> b_im) {
    double acc = 0.0;
    const std::size_t n = a_re.size();
    for (std::size_t k = 0; k < n; ++k) {
        acc += a_re[k] * b_re[k] + a_im[k] * b_im[k];
    }
    return acc;
}

std::complex<double> phased_inner(std::span<const double> a_re, std::span<const double> a_im,
                                  std::span<const double> b_re, std::span<const double> b_im,
                                  std::span<const double> w_re, std::span<const double> w_im) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    const std::size_t n = a_re.size();
    for (std::size_t k = 0; k < n; ++k) {
        // p = a * conj(b)
        const double p_re = a_re[k] * b_re[k] + a_im[k] * b_im[k];
        const double p_im = a_im[k] * b_re[k] - a_re[k] * b_im[k];
        acc_re += p_re * w_re[k] - p_im * w_im[k];
        acc_im += p_re * w_im[k] + p_im * w_re[k];
    }
    return {acc_re, acc_im};
}

}  // namespace hom::kernels::scalar
