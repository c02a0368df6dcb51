#pragma once

// homtool subcommands. Each cmd_* takes a plain option struct and returns the
// JSON document the CLI prints or writes; run() is the argv front end.

#include "hom/serialization.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace homtool {

using hom::json;

enum ExitCode : int { kOk = 0, kIo = 1, kValidation = 2, kNumerical = 3 };

struct GridOptions {
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<std::size_t> bins;
};

/// Parameters shared by the built-in wavepacket models; unset fields take the
/// per-model defaults.
struct ModelOptions {
    std::string kind = "trion";  // trion | exciton | gaussian | exponential
    std::optional<double> lifetime;   // ps
    std::optional<double> gamma;      // 1/ps, overrides lifetime
    std::optional<double> dephasing;  // 1/ps
    std::optional<double> fss;        // rad/ps
    std::optional<double> fwhm;       // ps
    std::optional<double> center;     // ps
    GridOptions grid;
};

hom::TimeGrid default_grid(const std::string& kind);
hom::TimeGrid resolve_grid(const GridOptions& g, const hom::TimeGrid& fallback);
hom::TemporalDensityMatrix build_model(const ModelOptions& opt, const hom::TimeGrid& grid);

/// A wavepacket argument: a path ending in .json, or a built-in model name
/// evaluated on the shared grid with default parameters.
hom::TemporalDensityMatrix load_wavepacket(const std::string& spec, const hom::TimeGrid& grid);

struct ModelResult {
    json summary;
    hom::TemporalDensityMatrix xi;
};
ModelResult cmd_model(const ModelOptions& opt);

struct OverlapOptions {
    std::string a;
    std::string b;
    double phase_rate = 0.0;
    GridOptions grid;
};
json cmd_overlap(const OverlapOptions& opt);

struct MixOptions {
    std::string signal = "trion";
    std::string noise = "gaussian";
    double p_signal = 1.0;
    double p_noise = 1.0;
    double theta = 0.1;
    double phase_rate = 0.0;
    GridOptions grid;
};
json cmd_mix(const MixOptions& opt);

struct SweepOptions {
    std::optional<std::string> source;
    std::optional<double> m_s;
    std::optional<double> m_n;
    std::optional<double> m_sn;
    std::optional<double> m_sn_prime;
    double reflectivity = 0.5;
    std::size_t eta_points = 51;
    double eta_max = 0.5;
    std::vector<double> eta;
};
std::vector<hom::SweepRecord> cmd_sweep(const SweepOptions& opt);

struct SlopeOptions {
    double m_s = 1.0;
    double m_sn = 0.0;
    std::optional<double> m_sn_prime;
    double reflectivity = 0.5;
};
json cmd_slope(const SlopeOptions& opt);

struct ExtractOptions {
    double v = 0.0;
    double g2 = 0.0;
    double v_sigma = 0.0;
    double g2_sigma = 0.0;
    double m_sn = 0.0;
    double reflectivity = 0.5;
};
json cmd_extract(const ExtractOptions& opt);

struct FitOptions {
    std::filesystem::path data;
    std::string model = "distinguishable";
    double reflectivity = 0.5;
    bool bounds = false;
};
json cmd_fit(const FitOptions& opt);

struct OracleOptions {
    std::size_t instances = 100;
    std::size_t max_bins = 8;
    std::size_t budget = hom::fock::kDefaultBinBudget;
    double tolerance = 1e-10;
    std::uint64_t seed = 1;
};
hom::fock::CampaignReport cmd_oracle(const OracleOptions& opt);
void print_campaign_summary(std::ostream& out, const hom::fock::CampaignReport& r);

struct AnalyzeOptions {
    std::filesystem::path g2_hist;
    std::filesystem::path hom_hist;
    double tau_ns = 12.5;
    double center_ns = 0.0;
    std::optional<double> window_ns;
    int k_min = 2;
    double reflectivity = 0.5;
};
json cmd_analyze(const AnalyzeOptions& opt);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homtool
