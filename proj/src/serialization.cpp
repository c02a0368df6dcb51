#include "hom/serialization.hpp"

#include "hom/error.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace hom {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const TemporalDensityMatrix& xi) {
    const std::size_t n = xi.size();
    json re = json::array();
    json im = json::array();
    for (std::size_t j = 0; j < n; ++j) {
        json rr = json::array();
        json ii = json::array();
        for (std::size_t k = 0; k < n; ++k) {
            rr.push_back(xi(j, k).real());
            ii.push_back(xi(j, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    const auto& g = xi.grid();
    json out;
    out["grid"] = {{"t_start", g.t_start}, {"t_end", g.t_end}, {"n_bins", g.n_bins}};
    out["xi_re"] = std::move(re);
    out["xi_im"] = std::move(im);
    return out;
}

TemporalDensityMatrix density_from_json(const json& j) {
    try {
        const auto& g = j.at("grid");
        const auto grid = build_grid(g.at("t_start").get<double>(), g.at("t_end").get<double>(),
                                     g.at("n_bins").get<std::size_t>());
        const std::size_t n = grid.n_bins;
        const auto& re = j.at("xi_re");
        const auto& im = j.at("xi_im");
        if (re.size() != n || im.size() != n) throw ValidationError("xi planes must have n_bins rows");
        std::vector<double> vr;
        std::vector<double> vi;
        vr.reserve(n * n);
        vi.reserve(n * n);
        for (std::size_t r = 0; r < n; ++r) {
            if (re[r].size() != n || im[r].size() != n) throw ValidationError("xi rows must have n_bins entries");
            for (std::size_t c = 0; c < n; ++c) {
                vr.push_back(re[r][c].get<double>());
                vi.push_back(im[r][c].get<double>());
            }
        }
        return TemporalDensityMatrix(grid, std::move(vr), std::move(vi));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed density matrix JSON: ") + e.what());
    }
}

TemporalDensityMatrix read_density(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open density matrix file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return density_from_json(j);
}

void write_trace_csv(std::ostream& out, const TemporalDensityMatrix& xi) {
    out << "t_ps,intensity\n";
    const auto d = xi.intensity();
    for (std::size_t k = 0; k < d.size(); ++k) {
        out << format_double(xi.grid().center(k)) << ',' << format_double(d[k]) << '\n';
    }
}

json to_json(const std::vector<Warning>& warnings) {
    json arr = json::array();
    for (auto w : warnings) arr.push_back(std::string(warning_name(w)));
    return arr;
}

json to_json(const ImperfectSource& s) {
    return json{{"p0", s.p0},       {"p1", s.p1},     {"p2", s.p2},     {"mu", s.mu},
                {"g2", s.g2},       {"m_tot", s.m_tot}, {"eta", s.eta}, {"m_s", s.m_s},
                {"m_n", s.m_n},     {"m_sn", s.m_sn}, {"m_sn_prime", s.m_sn_prime},
                {"warnings", to_json(s.warnings)}};
}

ImperfectSource imperfect_source_from_json(const json& j) {
    try {
        ImperfectSource s;
        s.p0 = j.at("p0").get<double>();
        s.p1 = j.at("p1").get<double>();
        s.p2 = j.at("p2").get<double>();
        s.mu = j.at("mu").get<double>();
        s.g2 = j.at("g2").get<double>();
        s.m_tot = j.at("m_tot").get<double>();
        s.eta = j.at("eta").get<double>();
        s.m_s = j.at("m_s").get<double>();
        s.m_n = j.at("m_n").get<double>();
        s.m_sn = j.at("m_sn").get<double>();
        s.m_sn_prime = j.at("m_sn_prime").get<double>();
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed imperfect-source JSON: ") + e.what());
    }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records) {
    out << "eta_rad,g2,v_hom\n";
    for (const auto& r : records) {
        out << format_double(r.eta) << ',' << format_double(r.g2) << ',' << format_double(r.v_hom) << '\n';
    }
}

json to_json(std::span<const SweepRecord> records) {
    json arr = json::array();
    for (const auto& r : records) {
        arr.push_back({{"eta_rad", r.eta}, {"g2", r.g2}, {"v_hom", r.v_hom}, {"warnings", to_json(g2_warnings(r.g2))}});
    }
    return arr;
}

json to_json(const hist::PeakAreas& p, const hist::Estimate& g2, const hist::Estimate& v) {
    return json{{"g2", g2.value},         {"g2_sigma", g2.sigma},   {"v_hom", v.value},
                {"v_sigma", v.sigma},     {"a0", p.a0},             {"a_uncor", p.a_uncor},
                {"n_side_peaks", p.n_side_peaks}, {"window_ns", p.window_ns}};
}

json to_json(const fit::FitResult& r) {
    return json{{"m_s", r.m_s},
                {"m_s_sigma", r.m_s_sigma},
                {"chi2", r.chi2},
                {"dof", r.dof},
                {"model", r.model.name()},
                {"R", r.model.bs.reflectivity()},
                {"at_boundary", r.at_boundary},
                {"warnings", to_json(r.warnings)}};
}

json to_json(const fock::InstanceReport& r) {
    json j{{"instance_seed", r.instance_seed},
           {"n_bins", r.n_bins},
           {"R", r.reflectivity},
           {"phase_rate", r.phase_rate},
           {"theta_mix", r.theta_mix}};
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    j["analytic_v"] = r.analytic_v;
    j["oracle_v"] = r.oracle_v;
    j["abs_diff"] = r.abs_diff;
    j["analytic_g2"] = r.analytic_g2;
    j["oracle_g2"] = r.oracle_g2;
    j["oracle_hbt_g2"] = r.oracle_hbt_g2;
    j["g2_abs_diff"] = r.g2_abs_diff;
    j["analytic_m_tot"] = r.analytic_m_tot;
    j["oracle_m_tot"] = r.oracle_m_tot;
    j["m_tot_abs_diff"] = r.m_tot_abs_diff;
    return j;
}

json to_json(const fock::CampaignReport& r) {
    json checks = json::array();
    for (const auto& inst : r.instances) checks.push_back(to_json(inst));
    return json{{"seed", r.config.seed},
                {"instances", r.config.instances},
                {"max_bins", r.config.max_bins},
                {"bin_budget", r.config.bin_budget},
                {"tolerance", r.config.tolerance},
                {"evaluated", r.evaluated},
                {"budget_violations", r.budget_violations},
                {"max_abs_diff_v", r.max_abs_diff_v},
                {"max_abs_diff_g2", r.max_abs_diff_g2},
                {"max_abs_diff_m_tot", r.max_abs_diff_m_tot},
                {"passed", r.passed},
                {"checks", std::move(checks)}};
}

void write_campaign_csv(std::ostream& out, const fock::CampaignReport& r) {
    out << "instance_seed,n_bins,analytic_v,oracle_v,abs_diff,analytic_g2,oracle_g2,g2_abs_diff,error\n";
    for (const auto& i : r.instances) {
        out << i.instance_seed << ',' << i.n_bins << ',';
        if (i.error) {
            out << ",,,,,," << '"' << *i.error << '"' << '\n';
            continue;
        }
        out << format_double(i.analytic_v) << ',' << format_double(i.oracle_v) << ','
            << format_double(i.abs_diff) << ',' << format_double(i.analytic_g2) << ','
            << format_double(i.oracle_g2) << ',' << format_double(i.g2_abs_diff) << ",\n";
    }
}

}  // namespace hom
