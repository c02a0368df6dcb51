#pragma once

// Coincidence-histogram pipeline for pulsed g2 (HBT) and HOM measurements:
// ingest a (time_ns, counts) table, integrate the zero-delay peak and the
// uncorrelated side peaks, and turn the areas into g2 or V_HOM with Poisson
// error bars.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hom::hist {

struct Histogram {
    std::vector<double> bin_edges;         // ns, strictly ascending
    std::vector<std::uint64_t> counts;     // counts.size() == bin_edges.size() - 1

    double center(std::size_t i) const noexcept { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
    std::uint64_t total() const noexcept;
};

/// Builds edges from bin-centre times: midpoints between neighbours, outer
/// edges half a neighbour spacing out.
Histogram from_centers(const std::vector<double>& times_ns, std::vector<std::uint64_t> counts);

/// Two-column CSV (time_ns, counts). A non-numeric first row is a header;
/// '#' starts a comment. Errors carry the 1-based line number.
Histogram ingest_histogram(std::istream& in);
Histogram ingest_histogram(const std::filesystem::path& path);

void write_histogram_csv(std::ostream& out, const Histogram& h);

struct RepRateConfig {
    double tau_ns = 12.5;
    double zero_delay_ns = 0.0;
    double window_ns = 6.25;
    /// First side-peak order averaged into A_uncor; the +-tau peaks of an
    /// unbalanced Mach-Zehnder HOM histogram are partially correlated.
    int k_min = 2;

    /// window defaults to tau/2.
    static RepRateConfig with_defaults(double tau_ns, double zero_delay_ns,
                                       std::optional<double> window_ns = std::nullopt,
                                       int k_min = 2);
    void validate() const;
};

struct PeakAreas {
    double a0 = 0.0;
    double a_uncor = 0.0;
    std::size_t n_side_peaks = 0;
    double window_ns = 0.0;
};

struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
};

/// Counts of bins whose centre lies in [center - window/2, center + window/2).
double window_sum(const Histogram& h, double center, double window);

PeakAreas integrate_peaks(const Histogram& h, const RepRateConfig& cfg);

/// g2 = A0 / A_uncor
Estimate g2_from_histogram(const PeakAreas& p);
/// V = 1 - 2 A0 / A_uncor
Estimate vhom_from_histogram(const PeakAreas& p);

/// Forward model for tests and demos: a comb of two-sided exponential peaks.
struct CombSpec {
    double tau_ns = 12.5;
    double zero_delay_ns = 0.0;
    int peaks_each_side = 8;
    double bin_width_ns = 0.05;
    double lifetime_ns = 0.17;
    double side_area = 10000.0;
    double center_area = 0.0;
    /// Area of the +-1 peaks; side_area when unset.
    std::optional<double> adjacent_area;
    /// Poisson-sample each bin when set; otherwise areas are split exactly.
    std::optional<std::uint64_t> poisson_seed;
};

Histogram synthesize_comb(const CombSpec& spec);

}  // namespace hom::hist
