#include "hom/fitter.hpp"

#include "hom/error.hpp"
#include "hom/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace hom::fit {
namespace {

constexpr double kSigmaFloor = 1e-6;
constexpr int kMaxIterations = 100;

std::optional<double> to_double(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return std::nullopt;
    s = s.substr(b, e - b + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

void validate_point(const DataPoint& p, std::size_t i) {
    const auto where = " (point " + std::to_string(i) + ")";
    if (!std::isfinite(p.g2) || p.g2 < 0.0) throw ValidationError("g2 must be finite and non-negative" + where);
    if (!std::isfinite(p.v) || p.v < -1.0 || p.v > 1.0) throw ValidationError("V must lie in [-1, 1]" + where);
    if (!(p.v_sigma > 0.0) || !std::isfinite(p.v_sigma)) throw ValidationError("v_sigma must be positive" + where);
    if (!(p.g2_sigma >= 0.0) || !std::isfinite(p.g2_sigma)) {
        throw ValidationError("g2_sigma must be non-negative" + where);
    }
}

}  // namespace

NoiseModel NoiseModel::parse(std::string_view spec, BeamSplitter bs) {
    NoiseModel m;
    m.bs = bs;
    if (spec == "distinguishable") {
        m.kind = NoiseKind::distinguishable;
    } else if (spec == "identical") {
        m.kind = NoiseKind::identical;
    } else if (spec.starts_with("fixed:")) {
        const auto v = to_double(std::string(spec.substr(6)));
        if (!v || !(*v >= 0.0 && *v <= 1.0)) {
            throw ValidationError("fixed-overlap model needs m_sn in [0, 1], e.g. fixed:0.3");
        }
        m.kind = NoiseKind::fixed_overlap;
        m.m_sn = *v;
    } else {
        throw ValidationError("unknown noise model '" + std::string(spec) +
                              "' (expected distinguishable, identical or fixed:<m_sn>)");
    }
    return m;
}

std::string NoiseModel::name() const {
    switch (kind) {
        case NoiseKind::distinguishable: return "distinguishable";
        case NoiseKind::identical: return "identical";
        case NoiseKind::fixed_overlap: {
            char buf[32];
            const auto r = std::to_chars(buf, buf + sizeof buf, m_sn);
            return "fixed:" + std::string(buf, r.ptr);
        }
    }
    return "unknown";
}

NoiseModel::Affine NoiseModel::affine(double g2) const {
    const double k = bs.four_rt();
    switch (kind) {
        case NoiseKind::distinguishable: return {k * (1.0 - g2) - 1.0, k * (1.0 - g2)};
        case NoiseKind::identical: return {k * (1.0 - g2) - 1.0, k};
        case NoiseKind::fixed_overlap: {
            const double f = 1.0 - g2 / (1.0 + m_sn);
            return {k * f - 1.0, k * f};
        }
    }
    return {0.0, 0.0};
}

double NoiseModel::visibility(double m_s, double g2) const {
    const auto a = affine(g2);
    return a.intercept + a.slope_ms * m_s;
}

double NoiseModel::dv_dg2(double m_s) const {
    const double k = bs.four_rt();
    switch (kind) {
        case NoiseKind::distinguishable: return -k * (1.0 + m_s);
        case NoiseKind::identical: return -k;
        case NoiseKind::fixed_overlap: return -k * (1.0 + m_s) / (1.0 + m_sn);
    }
    return 0.0;
}

FitResult fit(std::span<const DataPoint> points, const NoiseModel& model) {
    if (points.empty()) throw ValidationError("cannot fit an empty dataset");
    for (std::size_t i = 0; i < points.size(); ++i) validate_point(points[i], i);

    FitResult res;
    res.model = model;
    res.dof = static_cast<int>(points.size()) - 1;

    std::vector<double> weight(points.size());
    double m_s = 0.5;
    double sum_wbb = 0.0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double slope_g = model.dv_dg2(std::clamp(m_s, 0.0, 1.0));
        double sum_wby = 0.0;
        sum_wbb = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            const double var = p.v_sigma * p.v_sigma + slope_g * slope_g * p.g2_sigma * p.g2_sigma;
            weight[i] = 1.0 / var;
            const auto a = model.affine(p.g2);
            sum_wby += weight[i] * a.slope_ms * (p.v - a.intercept);
            sum_wbb += weight[i] * a.slope_ms * a.slope_ms;
        }
        if (!(sum_wbb > 0.0) || !std::isfinite(sum_wbb)) {
            throw NumericalError("fit is singular: the data do not constrain M_s");
        }
        const double next = sum_wby / sum_wbb;
        const bool converged = std::abs(next - m_s) <= 1e-15 * std::max(1.0, std::abs(next));
        m_s = next;
        if (converged) break;
    }

    res.m_s_sigma = 1.0 / std::sqrt(sum_wbb);  // chi2 + 1 for an affine model
    if (m_s < 0.0 || m_s > 1.0) {
        res.at_boundary = true;
        res.warnings.push_back(Warning::fit_at_boundary);
        m_s = std::clamp(m_s, 0.0, 1.0);
    }
    res.m_s = m_s;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = points[i].v - model.visibility(m_s, points[i].g2);
        res.chi2 += weight[i] * r * r;
    }
    for (const auto& p : points) {
        if (p.g2 > kHighG2Threshold) {
            res.warnings.push_back(Warning::high_g2);
            break;
        }
    }
    return res;
}

Bounds bound_ms(std::span<const DataPoint> points, const BeamSplitter& bs) {
    NoiseModel identical;
    identical.kind = NoiseKind::identical;
    identical.bs = bs;
    NoiseModel distinguishable;
    distinguishable.kind = NoiseKind::distinguishable;
    distinguishable.bs = bs;
    return {fit(points, identical), fit(points, distinguishable)};
}

std::vector<DataPoint> synthesize_dataset(double m_s, const NoiseModel& model,
                                          std::span<const double> g2_values, double noise_sigma,
                                          std::uint64_t seed) {
    if (!(m_s >= 0.0 && m_s <= 1.0)) throw ValidationError("m_s must lie in [0, 1]");
    if (!(noise_sigma >= 0.0)) throw ValidationError("noise_sigma must be non-negative");
    Rng rng(seed);
    std::vector<DataPoint> out;
    out.reserve(g2_values.size());
    for (double g2 : g2_values) {
        if (!(g2 >= 0.0)) throw ValidationError("g2 values must be non-negative");
        DataPoint p;
        p.g2 = g2;
        p.g2_sigma = 0.0;
        p.v = model.visibility(m_s, g2);
        if (noise_sigma > 0.0) p.v += noise_sigma * rng.normal();
        p.v_sigma = std::max(noise_sigma, kSigmaFloor);
        out.push_back(p);
    }
    return out;
}

std::vector<DataPoint> read_dataset(std::istream& in) {
    std::vector<DataPoint> out;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        std::vector<std::optional<double>> vals;
        for (const auto& s : fields) vals.push_back(to_double(s));
        const bool numeric = fields.size() == 4 && std::all_of(vals.begin(), vals.end(), [](auto& v) { return v.has_value(); });
        if (first && !numeric && !(fields.empty() || to_double(fields[0]))) {
            first = false;
            continue;  // header
        }
        first = false;
        if (!numeric) {
            throw ParseError("line " + std::to_string(lineno) + ": expected four numeric columns (g2, g2_sigma, v, v_sigma)", lineno);
        }
        out.push_back(DataPoint{*vals[0], *vals[1], *vals[2], *vals[3]});
    }
    if (out.empty()) throw ParseError("dataset contains no data rows", lineno);
    return out;
}

std::vector<DataPoint> read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
    try {
        return read_dataset(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

void write_dataset(std::ostream& out, std::span<const DataPoint> points) {
    const auto prec = out.precision(17);
    out << "g2,g2_sigma,v,v_sigma\n";
    for (const auto& p : points) out << p.g2 << ',' << p.g2_sigma << ',' << p.v << ',' << p.v_sigma << '\n';
    out.precision(prec);
}

}  // namespace hom::fit
