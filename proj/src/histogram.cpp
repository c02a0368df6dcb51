#include "hom/histogram.hpp"

#include "hom/error.hpp"
#include "hom/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace hom::hist {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto next = line.find_first_of(",;\t ", pos);
        const auto field = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        if (!trim(field).empty()) out.push_back(field);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

std::uint64_t Histogram::total() const noexcept {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
}

Histogram from_centers(const std::vector<double>& t, std::vector<std::uint64_t> counts) {
    if (t.size() != counts.size()) throw ValidationError("time and count columns differ in length");
    if (t.size() < 2) throw ValidationError("a histogram needs at least two bins");
    Histogram h;
    h.counts = std::move(counts);
    h.bin_edges.resize(t.size() + 1);
    h.bin_edges.front() = t[0] - 0.5 * (t[1] - t[0]);
    for (std::size_t i = 1; i < t.size(); ++i) h.bin_edges[i] = 0.5 * (t[i - 1] + t[i]);
    h.bin_edges.back() = t.back() + 0.5 * (t.back() - t[t.size() - 2]);
    return h;
}

Histogram ingest_histogram(std::istream& in) {
    std::vector<double> times;
    std::vector<std::uint64_t> counts;
    std::string line;
    std::size_t lineno = 0;
    bool seen_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        if (trim(view).empty()) continue;
        const auto fields = split_fields(view);
        const auto t = fields.size() >= 1 ? parse_double(fields[0]) : std::nullopt;
        const auto c = fields.size() >= 2 ? parse_double(fields[1]) : std::nullopt;
        if (!seen_row && !t) {  // header
            seen_row = true;
            continue;
        }
        seen_row = true;
        if (fields.size() != 2 || !t || !c) {
            throw ParseError("line " + std::to_string(lineno) + ": expected two numeric columns (time_ns, counts)", lineno);
        }
        if (!std::isfinite(*t)) throw ParseError("line " + std::to_string(lineno) + ": non-finite time", lineno);
        if (*c < 0.0) {
            throw ParseError("line " + std::to_string(lineno) + ": negative count " + std::string(trim(fields[1])), lineno);
        }
        if (!std::isfinite(*c) || *c != std::floor(*c)) {
            throw ParseError("line " + std::to_string(lineno) + ": counts must be integers", lineno);
        }
        if (!times.empty() && !(*t > times.back())) {
            throw ParseError("line " + std::to_string(lineno) + ": times must increase strictly", lineno);
        }
        times.push_back(*t);
        counts.push_back(static_cast<std::uint64_t>(*c));
    }
    if (times.empty()) throw ParseError("histogram file contains no data rows", lineno);
    if (times.size() < 2) throw ParseError("histogram needs at least two rows", lineno);
    return from_centers(times, std::move(counts));
}

Histogram ingest_histogram(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open histogram file '" + path.string() + "'");
    try {
        return ingest_histogram(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    const auto prec = out.precision(17);
    out << "time_ns,counts\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) out << h.center(i) << ',' << h.counts[i] << '\n';
    out.precision(prec);
}

RepRateConfig RepRateConfig::with_defaults(double tau_ns, double zero_delay_ns,
                                           std::optional<double> window_ns, int k_min) {
    RepRateConfig cfg;
    cfg.tau_ns = tau_ns;
    cfg.zero_delay_ns = zero_delay_ns;
    cfg.window_ns = window_ns.value_or(0.5 * tau_ns);
    cfg.k_min = k_min;
    cfg.validate();
    return cfg;
}

void RepRateConfig::validate() const {
    if (!(tau_ns > 0.0) || !std::isfinite(tau_ns)) throw ValidationError("tau must be positive");
    if (!std::isfinite(zero_delay_ns)) throw ValidationError("zero-delay position must be finite");
    if (!(window_ns > 0.0 && window_ns < tau_ns)) {
        throw ValidationError("integration window must lie in (0, tau)");
    }
    if (k_min < 1) throw ValidationError("kmin must be at least 1");
}

double window_sum(const Histogram& h, double center, double window) {
    const double lo = center - 0.5 * window;
    const double hi = center + 0.5 * window;
    double s = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double c = h.center(i);
        if (c >= lo && c < hi) s += static_cast<double>(h.counts[i]);
    }
    return s;
}

PeakAreas integrate_peaks(const Histogram& h, const RepRateConfig& cfg) {
    cfg.validate();
    const double first = h.bin_edges.front();
    const double last = h.bin_edges.back();
    auto fits = [&](double c) { return c - 0.5 * cfg.window_ns >= first && c + 0.5 * cfg.window_ns <= last; };

    PeakAreas p;
    p.window_ns = cfg.window_ns;
    p.a0 = window_sum(h, cfg.zero_delay_ns, cfg.window_ns);
    double side = 0.0;
    for (int sign : {-1, 1}) {
        for (int k = cfg.k_min;; ++k) {
            const double c = cfg.zero_delay_ns + sign * k * cfg.tau_ns;
            if (!fits(c)) break;
            side += window_sum(h, c, cfg.window_ns);
            ++p.n_side_peaks;
        }
    }
    if (p.n_side_peaks < 2) {
        throw ValidationError("only " + std::to_string(p.n_side_peaks) +
                              " uncorrelated side peaks fit inside the histogram (need at least 2)");
    }
    p.a_uncor = side / static_cast<double>(p.n_side_peaks);
    if (!(p.a_uncor > 0.0)) throw ValidationError("uncorrelated side peaks contain no counts");
    return p;
}

namespace {

double relative_poisson(const PeakAreas& p) {
    double var = 1.0 / (static_cast<double>(p.n_side_peaks) * p.a_uncor);
    if (p.a0 > 0.0) var += 1.0 / p.a0;
    return std::sqrt(var);
}

void require_uncor(const PeakAreas& p) {
    if (!(p.a_uncor > 0.0)) throw ValidationError("A_uncor must be positive");
    if (p.n_side_peaks == 0) throw ValidationError("peak areas carry no side peaks");
}

}  // namespace

Estimate g2_from_histogram(const PeakAreas& p) {
    require_uncor(p);
    const double ratio = p.a0 / p.a_uncor;
    return {ratio, ratio * relative_poisson(p)};
}

Estimate vhom_from_histogram(const PeakAreas& p) {
    require_uncor(p);
    const double ratio = p.a0 / p.a_uncor;
    return {1.0 - 2.0 * ratio, 2.0 * ratio * relative_poisson(p)};
}

Histogram synthesize_comb(const CombSpec& spec) {
    if (!(spec.tau_ns > 0.0 && spec.bin_width_ns > 0.0 && spec.lifetime_ns > 0.0)) {
        throw ValidationError("comb requires positive tau, bin width and lifetime");
    }
    if (spec.peaks_each_side < 1) throw ValidationError("comb needs at least one side peak");
    const double half_span = (spec.peaks_each_side + 0.5) * spec.tau_ns;
    const auto n_bins = static_cast<std::size_t>(std::ceil(2.0 * half_span / spec.bin_width_ns));
    const double t0 = spec.zero_delay_ns - 0.5 * static_cast<double>(n_bins) * spec.bin_width_ns;

    std::vector<double> centers(n_bins);
    for (std::size_t i = 0; i < n_bins; ++i) centers[i] = t0 + (static_cast<double>(i) + 0.5) * spec.bin_width_ns;
    std::vector<double> expected(n_bins, 0.0);
    std::vector<std::uint64_t> counts(n_bins, 0);

    for (int k = -spec.peaks_each_side; k <= spec.peaks_each_side; ++k) {
        double area = spec.side_area;
        if (k == 0) area = spec.center_area;
        if (std::abs(k) == 1 && spec.adjacent_area) area = *spec.adjacent_area;
        if (area <= 0.0) continue;
        const double pos = spec.zero_delay_ns + k * spec.tau_ns;
        // Peak support restricted to +-tau/4 so peaks never straddle windows.
        std::vector<std::size_t> idx;
        std::vector<double> w;
        double wsum = 0.0;
        for (std::size_t i = 0; i < n_bins; ++i) {
            const double d = std::abs(centers[i] - pos);
            if (d < 0.25 * spec.tau_ns) {
                idx.push_back(i);
                w.push_back(std::exp(-d / spec.lifetime_ns));
                wsum += w.back();
            }
        }
        if (spec.poisson_seed) {
            for (std::size_t m = 0; m < idx.size(); ++m) expected[idx[m]] += area * w[m] / wsum;
            continue;
        }
        // Largest-remainder split keeps the integer peak area exact.
        const auto target = static_cast<std::uint64_t>(std::llround(area));
        std::uint64_t assigned = 0;
        std::vector<std::pair<double, std::size_t>> rema;
        for (std::size_t m = 0; m < idx.size(); ++m) {
            const double share = static_cast<double>(target) * w[m] / wsum;
            const auto base = static_cast<std::uint64_t>(std::floor(share));
            counts[idx[m]] += base;
            assigned += base;
            rema.emplace_back(share - static_cast<double>(base), m);
        }
        std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t r = 0; assigned < target && r < rema.size(); ++r, ++assigned) counts[idx[rema[r].second]] += 1;
    }
    if (spec.poisson_seed) {
        Rng rng(*spec.poisson_seed);
        for (std::size_t i = 0; i < n_bins; ++i) counts[i] = rng.poisson(expected[i]);
    }
    return from_centers(centers, std::move(counts));
}

}  // namespace hom::hist
