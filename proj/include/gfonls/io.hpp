#pragma once

// Config ingestion, serialization, and command dispatch.
//
// Config schema (strict; unknown keys are rejected):
// {
//   "model":    {"alpha2":..,"alpha3":..,"alpha4":..,"alpha5":..,
//                "psi_minus":[re,im], "zbc_limit_mode":bool?},
//   "spectrum": {"pole_order":"simple"|"double",
//                "entries":[{"z":[re,im],"A":[re,im],"B":[re,im]?},...]},
//   "grid":     {"x":[x0,x1,nx], "t":[t0,t1,nt]},
//   "modes":    {"sign":"calibrated"|"flipped",
//                "dispersion":"printed"|"lax",
//                "gauge":"gauge_fixed"|"verbatim"},
//   "outputs":  [{"kind":"csv"|"pgm"|"json-meta", "path":"..."}]
// }

#include <filesystem>
#include <string>
#include <vector>

#include "gfonls/engine.hpp"
#include "gfonls/model.hpp"
#include "gfonls/spectrum.hpp"

namespace gfonls::io {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct OutputSpec {
    std::string kind;   // csv | pgm | json-meta
    std::string path;
};

struct RunConfig {
    ModelParams model;
    spectrum::PoleOrder pole_order = spectrum::PoleOrder::Simple;
    spectrum::SimpleSpectrum simple;
    spectrum::DoubleSpectrum dbl;
    engine::Grid grid;
    engine::EngineModes modes;
    std::vector<OutputSpec> outputs;

    spectrum::ExpandedSpectrum expand() const;
    std::vector<std::string> spectrum_violations() const;
};

// config-level failures carry exit code 2 semantics
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& file);
std::string serialize_config(const RunConfig& cfg);

// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits
std::string config_digest(const RunConfig& cfg);

void write_field_csv(const engine::SolutionField& field, const std::filesystem::path& path);
engine::SolutionField read_field_csv(const std::filesystem::path& path);

void write_heatmap_pgm(const engine::SolutionField& field, const std::filesystem::path& path);

void write_metadata_json(const engine::SolutionField& field, const std::filesystem::path& path);

// exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error
int dispatch(int argc, const char* const* argv);

}  // namespace gfonls::io
