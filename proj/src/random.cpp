#include "hom/random.hpp"

#include "hom/error.hpp"

#include <algorithm>

namespace hom {

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0)) throw ValidationError("Poisson mean must be non-negative");
    if (mean == 0.0) return 0;
    // Split large means into chunks so exp(-chunk) stays representable.
    constexpr double kChunk = 30.0;
    std::uint64_t total = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double lambda = std::min(remaining, kChunk);
        remaining -= lambda;
        const double limit = std::exp(-lambda);
        double prod = uniform();
        std::uint64_t k = 0;
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        total += k;
    }
    return total;
}

}  // namespace hom

