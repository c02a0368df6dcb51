#pragma once

// JSON and CSV encodings of the library's result types. Doubles are written
// with round-trip precision.

#include "hom/analytics.hpp"
#include "hom/fitter.hpp"
#include "hom/histogram.hpp"
#include "hom/noise_mixer.hpp"
#include "hom/oracle_campaign.hpp"
#include "hom/temporal.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>

namespace hom {

using json = nlohmann::ordered_json;

/// {grid:{t_start,t_end,n_bins}, xi_re:[[...]], xi_im:[[...]]}
json to_json(const TemporalDensityMatrix& xi);
TemporalDensityMatrix density_from_json(const json& j);
TemporalDensityMatrix read_density(const std::filesystem::path& path);

/// Diagonal intensity trace, columns t_ps,intensity.
void write_trace_csv(std::ostream& out, const TemporalDensityMatrix& xi);

json to_json(const std::vector<Warning>& warnings);
json to_json(const ImperfectSource& s);
ImperfectSource imperfect_source_from_json(const json& j);

/// Columns eta_rad,g2,v_hom.
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records);
json to_json(std::span<const SweepRecord> records);

json to_json(const hist::PeakAreas& p, const hist::Estimate& g2, const hist::Estimate& v);

json to_json(const fit::FitResult& r);

json to_json(const fock::InstanceReport& r);
json to_json(const fock::CampaignReport& r);
/// One row per instance.
void write_campaign_csv(std::ostream& out, const fock::CampaignReport& r);

/// %.17g
std::string format_double(double v);

}  // namespace hom
