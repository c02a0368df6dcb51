#include "hom/fock.hpp"

#include "hom/error.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>

namespace hom::fock {
namespace {

using cd = std::complex<double>;
using Occ = FockBasis::Occupation;

constexpr double kWeightFloor = 1e-14;

FockBasis::Occupation make_occ(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a < 0) return Occ{-1, b};
    return Occ{a, b};
}

void require_same_grid(const FockState& a, const FockState& b) {
    if (!(a.grid() == b.grid())) throw GridMismatchError("Fock states live on different time grids");
}

void require_one_port(const FockState& s, const char* what) {
    if (s.ports() != 1) {
        throw ValidationError(std::string(what) + " expects a one-port state (got " +
                              std::to_string(s.ports()) + " ports)");
    }
}

// Lowering a_m |occ> = coef |result>; coef == 0 when the mode is empty.
struct Lowered {
    Occ result;
    double coef = 0.0;
};

Lowered lower(const Occ& occ, int mode) {
    if (occ.first == mode && occ.second == mode) return {Occ{-1, mode}, std::numbers::sqrt2};
    if (occ.second == mode) return {Occ{-1, occ.first}, 1.0};
    if (occ.first == mode) return {Occ{-1, occ.second}, 1.0};
    return {};
}

}  // namespace

// --- FockBasis -------------------------------------------------------------

FockBasis::FockBasis(std::size_t n_modes) : n_modes_(n_modes) {
    states_.reserve(1 + n_modes + n_modes * (n_modes + 1) / 2);
    states_.push_back(Occ{});
    for (std::size_t m = 0; m < n_modes; ++m) states_.push_back(Occ{-1, static_cast<int>(m)});
    for (std::size_t a = 0; a < n_modes; ++a)
        for (std::size_t b = a; b < n_modes; ++b)
            states_.push_back(Occ{static_cast<int>(a), static_cast<int>(b)});
}

std::size_t FockBasis::pair_index(std::size_t a, std::size_t b) const noexcept {
    if (a > b) std::swap(a, b);
    return 1 + n_modes_ + a * (2 * n_modes_ - a + 1) / 2 + (b - a);
}

std::size_t FockBasis::index_of(Occupation occ) const {
    if (occ.second < 0) return vacuum_index();
    if (occ.first < 0) return single_index(static_cast<std::size_t>(occ.second));
    return pair_index(static_cast<std::size_t>(occ.first), static_cast<std::size_t>(occ.second));
}

// --- FockState -------------------------------------------------------------

FockState::FockState(TimeGrid grid, std::size_t ports, Eigen::MatrixXcd rho)
    : grid_(grid), ports_(ports), basis_(ports * grid.n_bins), rho_(std::move(rho)) {
    const auto dim = static_cast<Eigen::Index>(basis_.dimension());
    if (rho_.rows() != dim || rho_.cols() != dim) {
        throw ValidationError("density operator dimension does not match the truncated basis");
    }
}

std::array<double, 3> FockState::photon_number_probabilities() const {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < basis_.dimension(); ++i) {
        p[static_cast<std::size_t>(basis_.occupation(i).photons())] +=
            rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return p;
}

double FockState::mean_photon_number() const {
    const auto p = photon_number_probabilities();
    return p[1] + 2.0 * p[2];
}

int FockState::max_photons() const {
    const auto p = photon_number_probabilities();
    if (p[2] > kWeightFloor) return 2;
    if (p[1] > kWeightFloor) return 1;
    return 0;
}

double FockState::port_intensity(std::size_t port) const {
    const int n = static_cast<int>(grid_.n_bins);
    const int lo = static_cast<int>(port) * n;
    const int hi = lo + n;
    double total = 0.0;
    for (std::size_t i = 0; i < basis_.dimension(); ++i) {
        const auto& occ = basis_.occupation(i);
        const int count = (occ.first >= lo && occ.first < hi) + (occ.second >= lo && occ.second < hi);
        if (count > 0) {
            total += count * rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
    }
    return total;
}

// --- constructors ----------------------------------------------------------

FockState vacuum(const TimeGrid& grid, std::size_t ports) {
    FockBasis basis(ports * grid.n_bins);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return FockState(grid, ports, std::move(rho));
}

FockState embed(const SourceState& source, std::size_t bin_budget) {
    const auto& xi = source.one_photon;
    const std::size_t n = xi.size();
    if (n > bin_budget) {
        throw BudgetError("grid of " + std::to_string(n) + " bins exceeds the oracle budget of " +
                          std::to_string(bin_budget) + " bins");
    }
    FockBasis basis(n);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = source.p_vac;
    const double w = source.p_one * xi.grid().dt();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            rho(static_cast<Eigen::Index>(basis.single_index(j)),
                static_cast<Eigen::Index>(basis.single_index(k))) = w * xi(j, k);
    return FockState(xi.grid(), 1, std::move(rho));
}

FockState tensor(const FockState& a, const FockState& b) {
    require_same_grid(a, b);
    const int na = a.max_photons();
    const int nb = b.max_photons();
    if (na + nb > kMaxPhotons) {
        throw BudgetError("combined state would carry up to " + std::to_string(na + nb) +
                          " photons; the oracle is truncated at " + std::to_string(kMaxPhotons));
    }
    const std::size_t ports = a.ports() + b.ports();
    const int offset = static_cast<int>(a.n_modes());
    FockBasis basis(ports * a.grid().n_bins);

    // Only basis states inside each factor's support contribute.
    auto support = [](const FockState& s, int max_n) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < s.basis().dimension(); ++i)
            if (s.basis().occupation(i).photons() <= max_n) idx.push_back(i);
        return idx;
    };
    const auto sa = support(a, na);
    const auto sb = support(b, nb);

    auto merged = [&](std::size_t ia, std::size_t ib) {
        const auto& oa = a.basis().occupation(ia);
        const auto& ob = b.basis().occupation(ib);
        std::array<int, 4> modes{};
        int count = 0;
        for (int m : {oa.first, oa.second})
            if (m >= 0) modes[static_cast<std::size_t>(count++)] = m;
        for (int m : {ob.first, ob.second})
            if (m >= 0) modes[static_cast<std::size_t>(count++)] = m + offset;
        if (count == 0) return basis.vacuum_index();
        if (count == 1) return basis.index_of(Occ{-1, modes[0]});
        return basis.index_of(make_occ(modes[0], modes[1]));
    };

    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t ia : sa) {
        for (std::size_t ib : sb) {
            const auto row = static_cast<Eigen::Index>(merged(ia, ib));
            for (std::size_t ja : sa) {
                const cd ra = a.rho()(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ja));
                if (ra == cd{}) continue;
                for (std::size_t jb : sb) {
                    const cd rb = b.rho()(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(jb));
                    if (rb == cd{}) continue;
                    rho(row, static_cast<Eigen::Index>(merged(ja, jb))) += ra * rb;
                }
            }
        }
    }
    return FockState(a.grid(), ports, std::move(rho));
}

FockState apply_beam_splitter(const FockState& s, std::size_t port_a, std::size_t port_b,
                              const BeamSplitter& bs) {
    if (port_a >= s.ports() || port_b >= s.ports() || port_a == port_b) {
        throw ValidationError("beam splitter needs two distinct existing ports");
    }
    const std::size_t n = s.grid().n_bins;
    const std::size_t modes = s.n_modes();

    // Single-photon map U[out, in]: a_in^dag -> sum_out U[out,in] a_out^dag.
    const double c = std::cos(bs.theta());
    const double sn = std::sin(bs.theta());
    const cd e_plus = std::polar(1.0, bs.phase());
    const cd e_minus = std::conj(e_plus);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(modes),
                                                    static_cast<Eigen::Index>(modes));
    for (std::size_t k = 0; k < n; ++k) {
        const auto ma = static_cast<Eigen::Index>(port_a * n + k);
        const auto mb = static_cast<Eigen::Index>(port_b * n + k);
        u(ma, ma) = c;
        u(mb, ma) = e_plus * sn;
        u(ma, mb) = -e_minus * sn;
        u(mb, mb) = c;
    }

    const FockBasis& basis = s.basis();
    std::vector<Eigen::Triplet<cd>> triplets;
    triplets.emplace_back(0, 0, 1.0);
    auto nonzero_outputs = [&](int in) {
        std::vector<int> out;
        for (std::size_t m = 0; m < modes; ++m)
            if (u(static_cast<Eigen::Index>(m), in) != cd{}) out.push_back(static_cast<int>(m));
        return out;
    };
    for (std::size_t i = 1; i < basis.dimension(); ++i) {
        const auto& occ = basis.occupation(i);
        const auto col = static_cast<Eigen::Index>(i);
        if (occ.photons() == 1) {
            for (int p : nonzero_outputs(occ.second))
                triplets.emplace_back(static_cast<Eigen::Index>(basis.single_index(static_cast<std::size_t>(p))),
                                      col, u(p, occ.second));
            continue;
        }
        const int m1 = occ.first;
        const int m2 = occ.second;
        const double in_norm = m1 == m2 ? 1.0 / std::numbers::sqrt2 : 1.0;
        const auto outs1 = nonzero_outputs(m1);
        const auto outs2 = nonzero_outputs(m2);
        // a_m1^dag a_m2^dag |0> -> sum_{p,q} U[p,m1] U[q,m2] a_p^dag a_q^dag |0>
        std::map<std::pair<int, int>, cd> acc;
        for (int p : outs1) {
            for (int q : outs2) {
                const cd amp = u(p, m1) * u(q, m2);
                if (p == q) {
                    acc[{p, p}] += std::numbers::sqrt2 * amp;
                } else {
                    acc[{std::min(p, q), std::max(p, q)}] += amp;
                }
            }
        }
        for (const auto& [pq, amp] : acc) {
            const auto row = static_cast<Eigen::Index>(
                basis.pair_index(static_cast<std::size_t>(pq.first), static_cast<std::size_t>(pq.second)));
            triplets.emplace_back(row, col, in_norm * amp);
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::SparseMatrix<cd> w(dim, dim);
    w.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::MatrixXcd tmp = w * s.rho();
    Eigen::MatrixXcd out = (w * tmp.adjoint()).adjoint();
    return FockState(s.grid(), s.ports(), std::move(out));
}

FockState trace_out(const FockState& s, std::size_t port) {
    if (port >= s.ports()) throw ValidationError("cannot trace out a port that does not exist");
    if (s.ports() == 1) throw ValidationError("cannot trace out the only port");
    const int n = static_cast<int>(s.grid().n_bins);
    const int lo = static_cast<int>(port) * n;
    const int hi = lo + n;
    FockBasis reduced(static_cast<std::size_t>((static_cast<int>(s.ports()) - 1) * n));

    const std::size_t dim = s.basis().dimension();
    std::vector<std::size_t> kept_index(dim);
    std::vector<std::pair<int, int>> traced_part(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto& occ = s.basis().occupation(i);
        std::array<int, 2> kept{-1, -1};
        std::array<int, 2> traced{-1, -1};
        int nk = 0;
        int nt = 0;
        for (int m : {occ.first, occ.second}) {
            if (m < 0) continue;
            if (m >= lo && m < hi) {
                traced[static_cast<std::size_t>(nt++)] = m;
            } else {
                kept[static_cast<std::size_t>(nk++)] = m >= hi ? m - n : m;
            }
        }
        kept_index[i] = reduced.index_of(make_occ(kept[0], kept[1]));
        traced_part[i] = {std::min(traced[0], traced[1]), std::max(traced[0], traced[1])};
    }
    const auto rdim = static_cast<Eigen::Index>(reduced.dimension());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(rdim, rdim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (traced_part[i] != traced_part[j]) continue;
            rho(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
                s.rho()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return FockState(s.grid(), s.ports() - 1, std::move(rho));
}

FockState beam_split(const FockState& a, const FockState& b, const BeamSplitter& bs) {
    require_one_port(a, "beam_split");
    require_one_port(b, "beam_split");
    return apply_beam_splitter(tensor(a, b), 0, 1, bs);
}

FockState apply_loss(const FockState& s, double transmission) {
    if (!(transmission > 0.0 && transmission <= 1.0)) {
        throw ValidationError("transmission must lie in (0, 1] (got " + std::to_string(transmission) + ")");
    }
    if (transmission == 1.0) return s;
    const auto loss = BeamSplitter::from_reflectivity(1.0 - transmission);
    FockState out = s;
    for (std::size_t p = 0; p < s.ports(); ++p) {
        FockState widened = tensor(out, vacuum(s.grid(), 1));
        const std::size_t env = widened.ports() - 1;
        out = trace_out(apply_beam_splitter(widened, p, env, loss), env);
    }
    return out;
}

FockState mix_oracle(const SourceState& signal, const SourceState& noise, MixAngle angle,
                     std::size_t bin_budget) {
    const auto mixed = beam_split(embed(signal, bin_budget), embed(noise, bin_budget),
                                  BeamSplitter::from_angle(angle.radians()));
    return trace_out(mixed, 1);
}

CoincidenceResult coincidences(const FockState& two_port) {
    if (two_port.ports() != 2) throw ValidationError("coincidence counting needs a two-port state");
    const int n = static_cast<int>(two_port.grid().n_bins);
    CoincidenceResult res;
    res.n_bins = static_cast<std::size_t>(n);
    res.g34.assign(res.n_bins * res.n_bins, 0.0);
    double c34 = 0.0;
    const auto& basis = two_port.basis();
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const auto& occ = basis.occupation(i);
        if (occ.photons() != 2) continue;
        // first < second, so a (port 0, port 1) pair has first in port 0.
        if (occ.first < n && occ.second >= n) {
            const double w = two_port.rho()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
            res.g34[static_cast<std::size_t>(occ.first * n + (occ.second - n))] = w;
            c34 += w;
        }
    }
    const double i3 = two_port.port_intensity(0);
    const double i4 = two_port.port_intensity(1);
    if (!(i3 * i4 > 0.0)) {
        throw NumericalError("coincidence probability undefined: an output port is dark");
    }
    res.p34 = c34 / (i3 * i4);
    res.v_hom = 1.0 - 2.0 * res.p34;
    return res;
}

CoincidenceResult oracle_hom(const FockState& a, const FockState& b, const BeamSplitter& bs) {
    return coincidences(beam_split(a, b, bs));
}

CoincidenceResult oracle_hom(const SourceState& a, const SourceState& b, const BeamSplitter& bs,
                             std::size_t bin_budget) {
    return oracle_hom(embed(a, bin_budget), embed(b, bin_budget), bs);
}

double oracle_g2(const FockState& s) {
    require_one_port(s, "oracle_g2");
    const auto p = s.photon_number_probabilities();
    const double mu = p[1] + 2.0 * p[2];
    if (!(mu > 0.0)) throw ValidationError("g2 is undefined for zero mean photon number");
    return 2.0 * p[2] / (mu * mu);
}

double oracle_hbt_g2(const FockState& s) {
    require_one_port(s, "oracle_hbt_g2");
    return coincidences(beam_split(s, vacuum(s.grid(), 1), BeamSplitter{})).p34;
}

Eigen::MatrixXcd first_order_correlation(const FockState& s, std::size_t port) {
    if (port >= s.ports()) throw ValidationError("port does not exist");
    const int n = static_cast<int>(s.grid().n_bins);
    const int lo = static_cast<int>(port) * n;
    const auto& basis = s.basis();

    // Bucket (state, mode) by the lowered state so that only pairs mapping to
    // the same lowered state are combined.
    struct Entry {
        std::size_t state;
        int bin;
        double coef;
    };
    std::vector<std::vector<Entry>> buckets(basis.dimension());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        for (int b = 0; b < n; ++b) {
            const auto l = lower(basis.occupation(i), lo + b);
            if (l.coef != 0.0) buckets[basis.index_of(l.result)].push_back({i, b, l.coef});
        }
    }
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& bucket : buckets) {
        for (const auto& alpha : bucket) {      // <alpha| a_j^dag
            for (const auto& beta : bucket) {   // a_k |beta>
                g(alpha.bin, beta.bin) += alpha.coef * beta.coef *
                                          s.rho()(static_cast<Eigen::Index>(beta.state),
                                                  static_cast<Eigen::Index>(alpha.state));
            }
        }
    }
    return g;
}

double first_order_overlap(const FockState& s, std::size_t port) {
    const auto g = first_order_correlation(s, port);
    const double mu = g.trace().real();
    if (!(mu > 0.0)) throw ValidationError("overlap is undefined for zero mean photon number");
    return g.cwiseAbs2().sum() / (mu * mu);
}

double one_photon_purity(const FockState& s) {
    require_one_port(s, "one_photon_purity");
    const auto n = static_cast<Eigen::Index>(s.n_modes());
    const Eigen::MatrixXcd block = s.rho().block(1, 1, n, n);
    const double tr = block.trace().real();
    if (!(tr > 0.0)) throw ValidationError("one-photon block is empty");
    return (block * block).trace().real() / (tr * tr);
}

}  // namespace hom::fock
