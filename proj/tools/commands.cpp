#include "commands.hpp"

#include "hom/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace homtool {

using namespace hom;

namespace {

constexpr double kDefaultTrionLifetime = 170.0;        // ps
constexpr double kDefaultExcitonGamma = 1.0 / 150.0;   // 1/ps
constexpr double kDefaultExcitonFss = 0.0228;          // rad/ps, ~15 ueV
constexpr double kDefaultExponentialLifetime = 100.0;  // ps
constexpr double kDefaultPulseFwhm = 15.0;             // ps

bool is_model_name(const std::string& s) {
    return s == "trion" || s == "exciton" || s == "gaussian" || s == "exponential";
}

bool is_json_path(const std::string& s) {
    return s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0;
}

double positive(std::optional<double> v, double fallback, const char* name) {
    const double x = v.value_or(fallback);
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw ValidationError(std::string(name) + " must be positive (got " + format_double(x) + ")");
    }
    return x;
}

double decay_rate(const ModelOptions& opt, double default_lifetime) {
    if (opt.gamma) return positive(opt.gamma, 0.0, "gamma");
    return 1.0 / positive(opt.lifetime, default_lifetime, "lifetime");
}

TimeGrid shared_grid(const std::vector<std::string>& specs, const GridOptions& g) {
    std::optional<TimeGrid> from_file;
    std::optional<TimeGrid> uni;
    double dt = 0.0;
    for (const auto& s : specs) {
        if (is_json_path(s)) {
            if (!from_file) from_file = read_density(s).grid();
            continue;
        }
        if (!is_model_name(s)) throw ValidationError("unknown wavepacket '" + s + "' (expected a .json file or a model name)");
        const TimeGrid d = default_grid(s);
        dt = std::max(dt, d.dt());
        if (!uni) {
            uni = d;
        } else {
            uni->t_start = std::min(uni->t_start, d.t_start);
            uni->t_end = std::max(uni->t_end, d.t_end);
        }
    }
    TimeGrid base;
    if (from_file) {
        base = *from_file;
    } else {
        base = *uni;
        base.n_bins = static_cast<std::size_t>(std::ceil((base.t_end - base.t_start) / dt - 1e-9));
    }
    return resolve_grid(g, base);
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& cells) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, cells);
        return;
    }
    std::string text;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) text += ';';
            text += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
        }
    } else if (j.is_number_float()) {
        text = format_double(j.get<double>());
    } else if (j.is_string()) {
        text = j.get<std::string>();
    } else {
        text = j.dump();
    }
    cells.emplace_back(prefix, text);
}

/// Objects become a header plus one row; arrays of objects one row each.
void write_flat_csv(std::ostream& out, const json& j) {
    const auto rows = j.is_array() ? j : json::array({j});
    bool header = false;
    for (const auto& row : rows) {
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(row, "", cells);
        if (!header) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i].first;
            out << '\n';
            header = true;
        }
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i].second;
        out << '\n';
    }
}

struct Context {
    std::optional<std::filesystem::path> out_dir;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::ostream* out = &std::cout;
    std::ostream* err = &std::cerr;
};

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    return f;
}

template <class CsvWriter>
void emit(const Context& ctx, const std::string& stem, const json& doc, CsvWriter&& csv) {
    const bool as_csv = ctx.format == "csv";
    auto write = [&](std::ostream& os) {
        if (as_csv) {
            csv(os);
        } else {
            os << doc.dump(2) << '\n';
        }
    };
    if (!ctx.out_dir) {
        write(*ctx.out);
        return;
    }
    const auto path = *ctx.out_dir / (stem + (as_csv ? ".csv" : ".json"));
    auto f = open_output(path);
    write(f);
    if (!f) throw IoError("write failed for '" + path.string() + "'");
    *ctx.err << "wrote " << path.string() << '\n';
}

void emit(const Context& ctx, const std::string& stem, const json& doc) {
    emit(ctx, stem, doc, [&](std::ostream& os) { write_flat_csv(os, doc); });
}

/// JSON configuration: nested objects map to subcommand sections, arrays to
/// multi-valued options.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw ValidationError("config: top level must be an object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

  private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_float()) return format_double(v.get<double>());
        return v.dump();
    }

    static void collect(const json& obj, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, v] : obj.items()) {
            if (v.is_object()) {
                auto p = parents;
                p.push_back(key);
                collect(v, p, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (v.is_array()) {
                for (const auto& e : v) item.inputs.push_back(scalar(e));
            } else {
                item.inputs.push_back(scalar(v));
            }
            items.push_back(std::move(item));
        }
    }
};

void add_grid_options(CLI::App* sub, GridOptions& g) {
    sub->add_option("--t-start", g.t_start, "Grid start (ps)");
    sub->add_option("--t-end", g.t_end, "Grid end (ps)");
    sub->add_option("--bins", g.bins, "Number of time bins");
}

}  // namespace

TimeGrid default_grid(const std::string& kind) {
    if (kind == "trion") return build_grid(0.0, 3400.0, 1700);
    if (kind == "exciton") return build_grid(0.0, 3000.0, 1500);
    if (kind == "exponential") return build_grid(0.0, 2000.0, 1000);
    if (kind == "gaussian") return build_grid(-100.0, 100.0, 200);
    throw ValidationError("unknown model '" + kind + "' (expected trion, exciton, gaussian or exponential)");
}

TimeGrid resolve_grid(const GridOptions& g, const TimeGrid& fallback) {
    return build_grid(g.t_start.value_or(fallback.t_start), g.t_end.value_or(fallback.t_end),
                      g.bins.value_or(fallback.n_bins));
}

TemporalDensityMatrix build_model(const ModelOptions& opt, const TimeGrid& grid) {
    const double deph = opt.dephasing.value_or(0.0);
    if (!(deph >= 0.0) || !std::isfinite(deph)) {
        throw ValidationError("dephasing must be non-negative (got " + format_double(deph) + ")");
    }
    if (opt.kind == "trion") return make_exponential(grid, decay_rate(opt, kDefaultTrionLifetime), deph);
    if (opt.kind == "exponential") return make_exponential(grid, decay_rate(opt, kDefaultExponentialLifetime), deph);
    if (opt.kind == "exciton") {
        const double gamma = opt.gamma || opt.lifetime ? decay_rate(opt, 0.0) : kDefaultExcitonGamma;
        return make_exciton_beat(grid, gamma, positive(opt.fss, kDefaultExcitonFss, "fss"), deph);
    }
    if (opt.kind == "gaussian") {
        return make_gaussian_pulse(grid, opt.center.value_or(0.0), positive(opt.fwhm, kDefaultPulseFwhm, "fwhm"));
    }
    throw ValidationError("unknown model '" + opt.kind + "' (expected trion, exciton, gaussian or exponential)");
}

TemporalDensityMatrix load_wavepacket(const std::string& spec, const TimeGrid& grid) {
    if (is_json_path(spec)) return normalize(read_density(spec));
    ModelOptions m;
    m.kind = spec;
    return build_model(m, grid);
}

ModelResult cmd_model(const ModelOptions& opt) {
    const TimeGrid grid = resolve_grid(opt.grid, default_grid(opt.kind));
    auto xi = build_model(opt, grid);
    json s{{"model", opt.kind},
           {"t_start", grid.t_start},
           {"t_end", grid.t_end},
           {"n_bins", grid.n_bins},
           {"trace", xi.trace()},
           {"purity", trace_purity(xi)}};
    return {std::move(s), std::move(xi)};
}

json cmd_overlap(const OverlapOptions& opt) {
    const TimeGrid grid = shared_grid({opt.a, opt.b}, opt.grid);
    const auto a = load_wavepacket(opt.a, grid);
    const auto b = load_wavepacket(opt.b, grid);
    return json{{"a", opt.a},
                {"b", opt.b},
                {"phase_rate", opt.phase_rate},
                {"overlap", mean_wavepacket_overlap(a, b, {opt.phase_rate})},
                {"purity_a", trace_purity(a)},
                {"purity_b", trace_purity(b)}};
}

json cmd_mix(const MixOptions& opt) {
    const TimeGrid grid = shared_grid({opt.signal, opt.noise}, opt.grid);
    const auto s = SourceState::make(opt.p_signal, load_wavepacket(opt.signal, grid));
    const auto n = SourceState::make(opt.p_noise, load_wavepacket(opt.noise, grid));
    return to_json(mix_sources(s, n, MixAngle(opt.theta), {opt.phase_rate}));
}

std::vector<SweepRecord> cmd_sweep(const SweepOptions& opt) {
    ImperfectSource src;
    src.m_n = 1.0;
    if (opt.source) {
        std::ifstream in(*opt.source);
        if (!in) throw IoError("cannot open source file '" + *opt.source + "'");
        try {
            src = imperfect_source_from_json(json::parse(in));
        } catch (const json::parse_error& e) {
            throw ValidationError(*opt.source + ": " + e.what());
        }
    } else if (!opt.m_s) {
        throw ValidationError("sweep needs --source or --ms");
    }
    const double m_s = opt.m_s.value_or(src.m_s);
    const double m_n = opt.m_n.value_or(src.m_n);
    const double m_sn = opt.m_sn.value_or(src.m_sn);
    const double m_sn_prime = opt.m_sn_prime.value_or(opt.source ? src.m_sn_prime : m_sn);

    std::vector<double> eta = opt.eta;
    if (eta.empty()) {
        if (opt.eta_points == 0) throw ValidationError("eta-points must be at least 1");
        eta.resize(opt.eta_points);
        for (std::size_t i = 0; i < eta.size(); ++i) {
            eta[i] = eta.size() == 1 ? 0.0 : opt.eta_max * static_cast<double>(i) / static_cast<double>(eta.size() - 1);
        }
    }
    return parametric_sweep(m_s, m_n, m_sn, m_sn_prime, BeamSplitter::from_reflectivity(opt.reflectivity), eta);
}

json cmd_slope(const SlopeOptions& opt) {
    const auto bs = BeamSplitter::from_reflectivity(opt.reflectivity);
    const double mp = opt.m_sn_prime.value_or(opt.m_sn);
    return json{{"m_s", opt.m_s},
                {"m_sn", opt.m_sn},
                {"m_sn_prime", mp},
                {"R", opt.reflectivity},
                {"intercept", visibility_separable(opt.m_s, std::min(opt.m_sn, opt.m_s), 0.0, bs)},
                {"slope", slope_at_origin(opt.m_s, opt.m_sn, mp, bs)}};
}

json cmd_extract(const ExtractOptions& opt) {
    const auto bs = BeamSplitter::from_reflectivity(opt.reflectivity);
    const double m = extract_ms_general(opt.v, opt.g2, opt.m_sn, bs);
    const double f = 1.0 - opt.g2 / (1.0 + opt.m_sn);
    const double k = bs.four_rt();
    const double dv = 1.0 / (k * f);
    const double dg = (opt.v + 1.0) / (k * f * f * (1.0 + opt.m_sn));
    return json{{"v_hom", opt.v},
                {"g2", opt.g2},
                {"m_sn", opt.m_sn},
                {"R", opt.reflectivity},
                {"m_s", m},
                {"m_s_sigma", std::hypot(dv * opt.v_sigma, dg * opt.g2_sigma)},
                {"warnings", to_json(g2_warnings(opt.g2))}};
}

json cmd_fit(const FitOptions& opt) {
    const auto points = fit::read_dataset(opt.data);
    const auto bs = BeamSplitter::from_reflectivity(opt.reflectivity);
    if (opt.bounds) {
        const auto b = fit::bound_ms(points, bs);
        return json{{"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}};
    }
    return to_json(fit::fit(points, fit::NoiseModel::parse(opt.model, bs)));
}

fock::CampaignReport cmd_oracle(const OracleOptions& opt) {
    fock::CampaignConfig cfg;
    cfg.instances = opt.instances;
    cfg.seed = opt.seed;
    cfg.max_bins = opt.max_bins;
    cfg.bin_budget = opt.budget;
    cfg.tolerance = opt.tolerance;
    if (cfg.instances == 0) throw ValidationError("instances must be at least 1");
    if (cfg.max_bins == 0) throw ValidationError("max-bins must be at least 1");
    if (!(cfg.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    return fock::run_oracle_campaign(cfg);
}

void print_campaign_summary(std::ostream& out, const fock::CampaignReport& r) {
    out << "check              max |analytic - oracle|\n";
    out << "V_HOM              " << format_double(r.max_abs_diff_v) << '\n';
    out << "g2                 " << format_double(r.max_abs_diff_g2) << '\n';
    out << "M_tot              " << format_double(r.max_abs_diff_m_tot) << '\n';
    out << "evaluated " << r.evaluated << " of " << r.config.instances << ", budget violations "
        << r.budget_violations << ", tolerance " << format_double(r.config.tolerance) << ": "
        << (r.passed ? "PASS" : "FAIL") << '\n';
}

json cmd_analyze(const AnalyzeOptions& opt) {
    const auto cfg = hist::RepRateConfig::with_defaults(opt.tau_ns, opt.center_ns, opt.window_ns, opt.k_min);
    cfg.validate();
    const auto hg = hist::ingest_histogram(opt.g2_hist);
    const auto hh = hist::ingest_histogram(opt.hom_hist);
    const auto pg = hist::integrate_peaks(hg, cfg);
    const auto ph = hist::integrate_peaks(hh, cfg);
    const auto g2 = hist::g2_from_histogram(pg);
    const auto v = hist::vhom_from_histogram(ph);

    const auto bs = BeamSplitter::from_reflectivity(opt.reflectivity);
    const double m = extract_ms(v.value, g2.value, bs);
    const double k = bs.four_rt();
    const double f = 1.0 - g2.value;
    const double sigma = std::hypot(v.sigma / (k * f), (v.value + 1.0) / (k * f * f) * g2.sigma);

    auto peaks = [](const hist::PeakAreas& p) {
        return json{{"a0", p.a0}, {"a_uncor", p.a_uncor}, {"n_side_peaks", p.n_side_peaks}, {"window_ns", p.window_ns}};
    };
    return json{{"g2", g2.value},
                {"g2_sigma", g2.sigma},
                {"v_hom", v.value},
                {"v_sigma", v.sigma},
                {"m_s_corrected", m},
                {"m_s_sigma", sigma},
                {"R", opt.reflectivity},
                {"g2_peaks", peaks(pg)},
                {"hom_peaks", peaks(ph)},
                {"warnings", to_json(g2_warnings(g2.value))}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hong-Ou-Mandel visibility toolkit", "homtool"};
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON configuration file");
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    std::string out_dir;
    app.add_option("--out", out_dir, "Output directory (stdout when omitted)");
    app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", ctx.seed, "Random seed");

    ModelOptions model;
    auto* model_cmd = app.add_subcommand("model", "Build a wavepacket and write xi plus its time trace");
    model_cmd->add_option("kind", model.kind, "trion | exciton | gaussian | exponential")
        ->check(CLI::IsMember({"trion", "exciton", "gaussian", "exponential"}));
    model_cmd->add_option("--lifetime", model.lifetime, "Radiative lifetime (ps)");
    model_cmd->add_option("--gamma", model.gamma, "Decay rate (1/ps)");
    model_cmd->add_option("--dephasing", model.dephasing, "Pure dephasing rate (1/ps)");
    model_cmd->add_option("--fss", model.fss, "Fine-structure beat rate (rad/ps)");
    model_cmd->add_option("--fwhm", model.fwhm, "Gaussian intensity FWHM (ps)");
    model_cmd->add_option("--center", model.center, "Gaussian centre (ps)");
    add_grid_options(model_cmd, model.grid);

    OverlapOptions overlap;
    auto* overlap_cmd = app.add_subcommand("overlap", "Mean wavepacket overlap of two states");
    overlap_cmd->add_option("--a", overlap.a, "First wavepacket (.json or model name)")->required();
    overlap_cmd->add_option("--b", overlap.b, "Second wavepacket (.json or model name)")->required();
    overlap_cmd->add_option("--phase-rate", overlap.phase_rate, "Relative phase rate (rad/ps)");
    add_grid_options(overlap_cmd, overlap.grid);

    MixOptions mix;
    auto* mix_cmd = app.add_subcommand("mix", "Mix a signal photon with noise on a beam splitter");
    mix_cmd->add_option("--signal", mix.signal, "Signal wavepacket (.json or model name)");
    mix_cmd->add_option("--noise", mix.noise, "Noise wavepacket (.json or model name)");
    mix_cmd->add_option("--p-signal", mix.p_signal, "Signal one-photon probability");
    mix_cmd->add_option("--p-noise", mix.p_noise, "Noise one-photon probability");
    mix_cmd->add_option("--theta", mix.theta, "Mixing angle (rad)");
    mix_cmd->add_option("--phase-rate", mix.phase_rate, "Relative phase rate (rad/ps)");
    add_grid_options(mix_cmd, mix.grid);

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Parametric (g2, V) curve over the noise parameter");
    sweep_cmd->add_option("--source", sweep.source, "ImperfectSource JSON from 'mix'");
    sweep_cmd->add_option("--ms", sweep.m_s, "Signal overlap M_s");
    sweep_cmd->add_option("--mn", sweep.m_n, "Noise overlap M_n");
    sweep_cmd->add_option("--msn", sweep.m_sn, "Signal-noise overlap M_sn");
    sweep_cmd->add_option("--msn-prime", sweep.m_sn_prime, "Phased signal-noise overlap");
    sweep_cmd->add_option("--R", sweep.reflectivity, "Splitter reflectivity");
    sweep_cmd->add_option("--eta-points", sweep.eta_points, "Uniform eta samples on [0, eta-max]");
    sweep_cmd->add_option("--eta-max", sweep.eta_max, "Largest eta (rad)");
    sweep_cmd->add_option("--eta", sweep.eta, "Explicit eta values (rad)");

    SlopeOptions slope;
    auto* slope_cmd = app.add_subcommand("slope", "dV/dg2 at the origin");
    slope_cmd->add_option("--ms", slope.m_s, "Signal overlap M_s");
    slope_cmd->add_option("--msn", slope.m_sn, "Signal-noise overlap M_sn");
    slope_cmd->add_option("--msn-prime", slope.m_sn_prime, "Phased signal-noise overlap");
    slope_cmd->add_option("--R", slope.reflectivity, "Splitter reflectivity");

    ExtractOptions extract;
    auto* extract_cmd = app.add_subcommand("extract", "Recover M_s from a (g2, V) measurement");
    extract_cmd->add_option("--v", extract.v, "Measured visibility")->required();
    extract_cmd->add_option("--g2", extract.g2, "Measured g2")->required();
    extract_cmd->add_option("--v-sigma", extract.v_sigma, "Visibility uncertainty");
    extract_cmd->add_option("--g2-sigma", extract.g2_sigma, "g2 uncertainty");
    extract_cmd->add_option("--msn", extract.m_sn, "Assumed signal-noise overlap");
    extract_cmd->add_option("--R", extract.reflectivity, "Splitter reflectivity");

    FitOptions fitopt;
    std::string data_path;
    auto* fit_cmd = app.add_subcommand("fit", "Weighted least-squares fit of M_s");
    fit_cmd->add_option("--data", data_path, "CSV with g2,g2_sigma,v,v_sigma")->required();
    fit_cmd->add_option("--model", fitopt.model, "distinguishable | identical | fixed:<m_sn>");
    fit_cmd->add_option("--R", fitopt.reflectivity, "Splitter reflectivity");
    fit_cmd->add_flag("--bounds", fitopt.bounds, "Report both limiting models");

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Randomised closed-form vs Fock-space check");
    oracle_cmd->add_option("--instances", oracle.instances, "Number of random instances");
    oracle_cmd->add_option("--max-bins", oracle.max_bins, "Largest time grid");
    oracle_cmd->add_option("--budget", oracle.budget, "Bin budget of the Fock oracle");
    oracle_cmd->add_option("--tolerance", oracle.tolerance, "Pass threshold");

    AnalyzeOptions analyze;
    std::string g2_path;
    std::string hom_path;
    double window = 0.0;
    auto* analyze_cmd = app.add_subcommand("analyze", "g2 and V from coincidence histograms, corrected M_s");
    analyze_cmd->add_option("--g2-hist", g2_path, "HBT histogram CSV (time_ns, counts)")->required();
    analyze_cmd->add_option("--hom-hist", hom_path, "HOM histogram CSV (time_ns, counts)")->required();
    analyze_cmd->add_option("--tau", analyze.tau_ns, "Repetition period (ns)");
    analyze_cmd->add_option("--center", analyze.center_ns, "Zero-delay position (ns)");
    auto* window_opt = analyze_cmd->add_option("--window", window, "Integration window (ns), default tau/2");
    analyze_cmd->add_option("--kmin", analyze.k_min, "First side peak used for A_uncor");
    analyze_cmd->add_option("--R", analyze.reflectivity, "HOM splitter reflectivity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : (dynamic_cast<const CLI::FileError*>(&e) ? kIo : kValidation);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    if (!out_dir.empty()) ctx.out_dir = out_dir;

    try {
        if (*model_cmd) {
            const auto r = cmd_model(model);
            const auto dir = ctx.out_dir.value_or(".");
            {
                auto f = open_output(dir / (model.kind + ".json"));
                f << to_json(r.xi).dump() << '\n';
                if (!f) throw IoError("write failed for '" + (dir / (model.kind + ".json")).string() + "'");
            }
            {
                auto f = open_output(dir / (model.kind + "_trace.csv"));
                write_trace_csv(f, r.xi);
                if (!f) throw IoError("write failed for '" + (dir / (model.kind + "_trace.csv")).string() + "'");
            }
            Context c = ctx;
            c.out_dir.reset();
            emit(c, model.kind, r.summary);
        } else if (*overlap_cmd) {
            emit(ctx, "overlap", cmd_overlap(overlap));
        } else if (*mix_cmd) {
            emit(ctx, "mix", cmd_mix(mix));
        } else if (*sweep_cmd) {
            const auto rec = cmd_sweep(sweep);
            emit(ctx, "sweep", to_json(std::span<const SweepRecord>(rec)),
                 [&](std::ostream& os) { write_sweep_csv(os, rec); });
        } else if (*slope_cmd) {
            emit(ctx, "slope", cmd_slope(slope));
        } else if (*extract_cmd) {
            emit(ctx, "extract", cmd_extract(extract));
        } else if (*fit_cmd) {
            fitopt.data = data_path;
            emit(ctx, "fit", cmd_fit(fitopt));
        } else if (*oracle_cmd) {
            oracle.seed = ctx.seed;
            const auto r = cmd_oracle(oracle);
            emit(ctx, "oracle", to_json(r), [&](std::ostream& os) { write_campaign_csv(os, r); });
            print_campaign_summary(err, r);
            if (!r.passed) return kNumerical;
        } else if (*analyze_cmd) {
            analyze.g2_hist = g2_path;
            analyze.hom_hist = hom_path;
            if (window_opt->count() > 0) analyze.window_ns = window;
            emit(ctx, "analyze", cmd_analyze(analyze));
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}

}  // namespace homtool
