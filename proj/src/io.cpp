#include "purcellkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace purcellkit::io {

json to_json(const CavityMode& mode) {
    return json{{"wavelength_nm", mode.wavelength_nm},
                {"quality_factor", mode.quality_factor},
                {"mode_volume_cubic_lambda_over_n", mode.mode_volume_cubic_lambda_over_n},
                {"polarization", to_string(mode.polarization)},
                {"azimuthal_number", mode.azimuthal_number},
                {"radial_number", mode.radial_number}};
}

json to_json(const CouplingGeometry& geometry) {
    return json{{"overlap_eta", geometry.overlap_eta}};
}

json to_json(const EmitterTransition& transition) {
    return json{{"wavelength_nm", transition.wavelength_nm},
                {"bulk_lifetime_ns", transition.bulk_lifetime_ns},
                {"zpl_branching_ratio", transition.zpl_branching_ratio},
                {"leak_ratio", transition.leak_ratio},
                {"geometry", to_json(transition.geometry)}};
}

json to_json(const DecayModel& model) {
    return json{{"zpl_rate_per_ns", model.zpl_rate_per_ns},
                {"sideband_rate_per_ns", model.sideband_rate_per_ns},
                {"purcell_factor", model.purcell_factor}};
}

json to_json(const RingGeometry& geometry) {
    return json{{"outer_diameter_um", geometry.outer_diameter_um},
                {"ring_width_um", geometry.ring_width_um},
                {"membrane_thickness_um", geometry.membrane_thickness_um},
                {"core_index", geometry.core_index},
                {"cladding_index_top", geometry.cladding_index_top},
                {"cladding_index_bottom", geometry.cladding_index_bottom}};
}

json to_json(const fit::FitReport& report) {
    return json{{"parameters", report.parameters},
                {"sigmas", report.sigmas},
                {"reduced_chi2", report.reduced_chi2},
                {"iterations", report.iterations},
                {"converged", report.converged}};
}

CavityMode cavity_mode_from_json(const json& j) {
    CavityMode mode;
    mode.wavelength_nm = j.at("wavelength_nm").get<double>();
    mode.quality_factor = j.at("quality_factor").get<double>();
    mode.mode_volume_cubic_lambda_over_n = j.at("mode_volume_cubic_lambda_over_n").get<double>();
    const auto pol = polarization_from_string(j.at("polarization").get<std::string>());
    if (!pol) throw std::runtime_error("polarization must be \"TE\" or \"TM\"");
    mode.polarization = *pol;
    mode.azimuthal_number = j.at("azimuthal_number").get<int>();
    mode.radial_number = j.at("radial_number").get<int>();
    return mode;
}

CouplingGeometry coupling_geometry_from_json(const json& j) {
    CouplingGeometry geometry;
    geometry.overlap_eta = j.at("overlap_eta").get<double>();
    return geometry;
}

EmitterTransition emitter_transition_from_json(const json& j) {
    EmitterTransition transition;
    transition.wavelength_nm = j.at("wavelength_nm").get<double>();
    transition.bulk_lifetime_ns = j.at("bulk_lifetime_ns").get<double>();
    transition.zpl_branching_ratio = j.at("zpl_branching_ratio").get<double>();
    transition.leak_ratio = j.value("leak_ratio", 1.0);
    if (j.contains("geometry")) transition.geometry = coupling_geometry_from_json(j.at("geometry"));
    return transition;
}

DecayModel decay_model_from_json(const json& j) {
    DecayModel model;
    model.zpl_rate_per_ns = j.at("zpl_rate_per_ns").get<double>();
    model.sideband_rate_per_ns = j.at("sideband_rate_per_ns").get<double>();
    model.purcell_factor = j.at("purcell_factor").get<double>();
    return model;
}

RingGeometry ring_geometry_from_json(const json& j) {
    RingGeometry geometry;
    geometry.outer_diameter_um = j.at("outer_diameter_um").get<double>();
    geometry.ring_width_um = j.at("ring_width_um").get<double>();
    geometry.membrane_thickness_um = j.at("membrane_thickness_um").get<double>();
    geometry.core_index = j.at("core_index").get<double>();
    geometry.cladding_index_top = j.value("cladding_index_top", 1.0);
    geometry.cladding_index_bottom = j.value("cladding_index_bottom", 1.0);
    return geometry;
}

std::string format_double(double value) {
    // nlohmann emits the shortest digits that round-trip exactly
    return json(value).dump();
}

std::string histogram_csv(const dynamics::Histogram& hist) {
    std::string out = "time_ns,counts\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        out += format_double(hist.bin_edges_ns[i]);
        out += ',';
        out += std::to_string(hist.counts[i]);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text, char sep) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, sep)) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_number(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("malformed ") + what + " value: '" + s + "'");
    }
}

}  // namespace

dynamics::Histogram histogram_from_csv(const std::string& text) {
    const auto rows = parse_csv(text, ',');
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "time_ns")
        throw std::runtime_error("histogram CSV must start with header time_ns,counts");
    dynamics::Histogram hist;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2) throw std::runtime_error("histogram CSV rows need 2 fields");
        hist.bin_edges_ns.push_back(parse_number(rows[i][0], "time"));
        hist.counts.push_back(static_cast<std::int64_t>(parse_number(rows[i][1], "count")));
    }
    if (hist.bin_edges_ns.size() < 2) throw std::runtime_error("histogram CSV needs at least 2 bins");
    // left edges on a uniform grid; append the final right edge
    const double width = hist.bin_edges_ns[1] - hist.bin_edges_ns[0];
    for (std::size_t i = 1; i < hist.bin_edges_ns.size(); ++i) {
        const double w = hist.bin_edges_ns[i] - hist.bin_edges_ns[i - 1];
        if (std::abs(w - width) > 1e-9 * std::max(1.0, width))
            throw std::runtime_error("histogram CSV requires uniform bins");
    }
    hist.bin_edges_ns.push_back(hist.bin_edges_ns.back() + width);
    return hist;
}

std::string detuning_scan_csv(const dynamics::DetuningScan& scan) {
    std::string out = "detuning_nm,lifetime_ns,sigma_ns\n";
    for (const auto& pt : scan.points) {
        out += format_double(pt.detuning_nm);
        out += ',';
        out += format_double(pt.lifetime_ns);
        out += ',';
        out += format_double(pt.sigma_ns);
        out += '\n';
    }
    return out;
}

dynamics::DetuningScan detuning_scan_from_csv(const std::string& text) {
    const auto rows = parse_csv(text, ',');
    if (rows.empty() || rows[0].size() < 3 || rows[0][0] != "detuning_nm")
        throw std::runtime_error("scan CSV must start with header detuning_nm,lifetime_ns,sigma_ns");
    dynamics::DetuningScan scan;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3) throw std::runtime_error("scan CSV rows need 3 fields");
        scan.points.push_back({parse_number(rows[i][0], "detuning"),
                               parse_number(rows[i][1], "lifetime"),
                               parse_number(rows[i][2], "sigma")});
    }
    return scan;
}

std::string spectrum_csv(const std::vector<spectra::SpectrumSample>& spectrum) {
    std::string out = "wavelength_nm,intensity\n";
    for (const auto& s : spectrum) {
        out += format_double(s.wavelength_nm);
        out += ',';
        out += format_double(s.intensity);
        out += '\n';
    }
    return out;
}

std::string modes_csv(const std::vector<CavityMode>& modes) {
    std::string out = "polarization,m,p,wavelength_nm,mode_volume,standing_wave_mode_volume\n";
    for (const CavityMode& mode : modes) {
        out += to_string(mode.polarization);
        out += ',';
        out += std::to_string(mode.azimuthal_number);
        out += ',';
        out += std::to_string(mode.radial_number);
        out += ',';
        out += format_double(mode.wavelength_nm);
        out += ',';
        out += format_double(mode.mode_volume_cubic_lambda_over_n);
        out += ',';
        out += format_double(0.5 * mode.mode_volume_cubic_lambda_over_n);
        out += '\n';
    }
    return out;
}

std::string tuning_map_tsv(const std::vector<double>& shifts_nm,
                           const std::vector<double>& wavelengths_nm,
                           const std::vector<std::vector<double>>& rows) {
    std::string out = "shift_nm";
    for (double w : wavelengths_nm) {
        out += '\t';
        out += format_double(w);
    }
    out += '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += format_double(shifts_nm[i]);
        for (double v : rows[i]) {
            out += '\t';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open file for writing: " + tmp);
        out << contents;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic rename failed for: " + path);
}

}  // namespace purcellkit::io
