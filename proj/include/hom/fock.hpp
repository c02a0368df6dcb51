#pragma once

// Brute-force few-photon verifier. States are density operators on the Fock
// space of (ports x time bins) modes truncated at two photons in total.
// Each time bin is one orthonormal mode; a beam splitter mixes the
// same-bin modes of two ports.

#include "hom/beam_splitter.hpp"
#include "hom/noise_mixer.hpp"
#include "hom/temporal.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace hom::fock {

inline constexpr std::size_t kDefaultBinBudget = 16;
inline constexpr int kMaxPhotons = 2;

/// Basis of the <= 2 photon space over n_modes modes: index 0 is vacuum,
/// 1..n_modes single photons, then pairs (a <= b) in lexicographic order.
class FockBasis {
  public:
    struct Occupation {
        int first = -1;   // -1: empty slot
        int second = -1;  // first <= second when both are set
        int photons() const noexcept { return (first >= 0) + (second >= 0); }
    };

    explicit FockBasis(std::size_t n_modes);

    std::size_t n_modes() const noexcept { return n_modes_; }
    std::size_t dimension() const noexcept { return states_.size(); }
    const Occupation& occupation(std::size_t index) const { return states_[index]; }
    std::size_t vacuum_index() const noexcept { return 0; }
    std::size_t single_index(std::size_t mode) const noexcept { return 1 + mode; }
    std::size_t pair_index(std::size_t a, std::size_t b) const noexcept;
    std::size_t index_of(Occupation occ) const;

  private:
    std::size_t n_modes_;
    std::vector<Occupation> states_;
};

class FockState {
  public:
    FockState(TimeGrid grid, std::size_t ports, Eigen::MatrixXcd rho);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t ports() const noexcept { return ports_; }
    std::size_t n_modes() const noexcept { return ports_ * grid_.n_bins; }
    const FockBasis& basis() const noexcept { return basis_; }
    const Eigen::MatrixXcd& rho() const noexcept { return rho_; }

    double trace() const { return rho_.trace().real(); }
    /// Total-photon-number distribution {p0, p1, p2}.
    std::array<double, 3> photon_number_probabilities() const;
    double mean_photon_number() const;
    /// Highest photon number carrying non-negligible weight.
    int max_photons() const;
    /// Mean photon number in one port.
    double port_intensity(std::size_t port) const;

  private:
    TimeGrid grid_;
    std::size_t ports_;
    FockBasis basis_;
    Eigen::MatrixXcd rho_;
};

struct CoincidenceResult {
    double p34 = 0.0;
    double v_hom = 0.0;
    std::size_t n_bins = 0;
    /// <n3(t_j) n4(t_k)>, row-major n_bins x n_bins.
    std::vector<double> g34;
};

FockState vacuum(const TimeGrid& grid, std::size_t ports = 1);

/// One-port state with vacuum weight p_vac and one-photon block xi*dt.
FockState embed(const SourceState& source, std::size_t bin_budget = kDefaultBinBudget);

/// a occupies the leading ports, b the trailing ones.
FockState tensor(const FockState& a, const FockState& b);

/// Mixes same-bin modes of two ports; port_a plays input 1 / output 3.
FockState apply_beam_splitter(const FockState& s, std::size_t port_a, std::size_t port_b,
                              const BeamSplitter& bs);

FockState trace_out(const FockState& s, std::size_t port);

/// Two one-port states on the inputs of bs; output ports 0 (mode 3) and 1 (mode 4).
FockState beam_split(const FockState& a, const FockState& b, const BeamSplitter& bs);

/// Each photon survives independently with the given probability.
FockState apply_loss(const FockState& s, double transmission);

/// Explicit-state version of the separable-noise mixer (transmitted port kept).
FockState mix_oracle(const SourceState& signal, const SourceState& noise, MixAngle angle,
                     std::size_t bin_budget = kDefaultBinBudget);

/// Coincidence statistics of a two-port state; p34 = C34 / (I3 I4).
CoincidenceResult coincidences(const FockState& two_port);

CoincidenceResult oracle_hom(const FockState& a, const FockState& b, const BeamSplitter& bs);
CoincidenceResult oracle_hom(const SourceState& a, const SourceState& b, const BeamSplitter& bs,
                             std::size_t bin_budget = kDefaultBinBudget);

/// 2 p2 / mu^2 read off the photon-number distribution of a one-port state.
double oracle_g2(const FockState& s);
/// Same quantity measured as the coincidence ratio after a 50:50 splitter.
double oracle_hbt_g2(const FockState& s);

/// G[j,k] = <a_j^dag a_k> over the bins of one port.
Eigen::MatrixXcd first_order_correlation(const FockState& s, std::size_t port = 0);
/// sum |G|^2 / mu^2, the total mean wavepacket overlap.
double first_order_overlap(const FockState& s, std::size_t port = 0);
/// Tr[B^2]/Tr[B]^2 of the one-photon block of a one-port state.
double one_photon_purity(const FockState& s);

}  // namespace hom::fock
