#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "purcellkit/core.hpp"
#include "purcellkit/dynamics.hpp"
#include "purcellkit/fit.hpp"
#include "purcellkit/spectra.hpp"

// JSON (de)serialization of the domain types (field names snake_case,
// values round-tripping bit-identically) and the CSV/TSV formats of the
// CLI: '.' decimal separator, no grouping, LF line endings.

namespace purcellkit::io {

using nlohmann::json;

json to_json(const CavityMode& mode);
json to_json(const CouplingGeometry& geometry);
json to_json(const EmitterTransition& transition);
json to_json(const DecayModel& model);
json to_json(const RingGeometry& geometry);
json to_json(const fit::FitReport& report);

CavityMode cavity_mode_from_json(const json& j);
CouplingGeometry coupling_geometry_from_json(const json& j);
EmitterTransition emitter_transition_from_json(const json& j);
DecayModel decay_model_from_json(const json& j);
RingGeometry ring_geometry_from_json(const json& j);

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

std::string histogram_csv(const dynamics::Histogram& hist);           // time_ns,counts (left edges)
dynamics::Histogram histogram_from_csv(const std::string& text);      // uniform bins required

std::string detuning_scan_csv(const dynamics::DetuningScan& scan);    // detuning_nm,lifetime_ns,sigma_ns
dynamics::DetuningScan detuning_scan_from_csv(const std::string& text);

std::string spectrum_csv(const std::vector<spectra::SpectrumSample>& spectrum);
std::string modes_csv(const std::vector<CavityMode>& modes);          // polarization,m,p,wavelength_nm,mode_volume,standing_wave_mode_volume
std::string tuning_map_tsv(const std::vector<double>& shifts_nm,
                           const std::vector<double>& wavelengths_nm,
                           const std::vector<std::vector<double>>& rows);

std::string read_file(const std::string& path);
// temp file + rename, so partially written outputs are never observed
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace purcellkit::io
