#include "gfonls/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gfonls/lax.hpp"
#include "gfonls/spectral.hpp"
#include "gfonls/trace.hpp"
#include "gfonls/verify.hpp"

namespace gfonls::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(where, "unknown key '" + it.key() + "'");
    }
}

cplx parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

double need_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        fail(where, std::string("missing numeric '") + key + "'");
    return obj[key].get<double>();
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    if (!root.is_object()) fail("config", "top level must be an object");
    reject_unknown_keys(root, "config", {"model", "spectrum", "grid", "modes", "outputs"});

    RunConfig cfg;

    // model
    if (!root.contains("model")) fail("config", "missing 'model'");
    const json& jm = root["model"];
    reject_unknown_keys(jm, "model",
                        {"alpha2", "alpha3", "alpha4", "alpha5", "psi_minus", "zbc_limit_mode"});
    const double a2 = need_number(jm, "alpha2", "model");
    const double a3 = need_number(jm, "alpha3", "model");
    const double a4 = need_number(jm, "alpha4", "model");
    const double a5 = need_number(jm, "alpha5", "model");
    if (!jm.contains("psi_minus")) fail("model", "missing 'psi_minus'");
    const cplx psim = parse_complex(jm["psi_minus"], "model.psi_minus");
    const bool zbc = jm.value("zbc_limit_mode", false);
    try {
        cfg.model = ModelParams::make(a2, a3, a4, a5, psim, zbc);
    } catch (const std::exception& e) {
        fail("model", e.what());
    }

    // spectrum
    if (!root.contains("spectrum")) fail("config", "missing 'spectrum'");
    const json& js = root["spectrum"];
    reject_unknown_keys(js, "spectrum", {"pole_order", "entries"});
    const std::string order = js.value("pole_order", "");
    if (order == "simple") cfg.pole_order = spectrum::PoleOrder::Simple;
    else if (order == "double") cfg.pole_order = spectrum::PoleOrder::Double;
    else fail("spectrum.pole_order", "expected 'simple' or 'double'");
    if (!js.contains("entries") || !js["entries"].is_array())
        fail("spectrum", "missing 'entries' array");
    int idx = 0;
    for (const json& je : js["entries"]) {
        const std::string where = "spectrum.entries[" + std::to_string(idx++) + "]";
        reject_unknown_keys(je, where, {"z", "A", "B"});
        if (!je.contains("z") || !je.contains("A")) fail(where, "needs 'z' and 'A'");
        const cplx z = parse_complex(je["z"], where + ".z");
        const cplx A = parse_complex(je["A"], where + ".A");
        if (cfg.pole_order == spectrum::PoleOrder::Simple) {
            if (je.contains("B")) fail(where, "'B' is only valid for pole_order=double");
            cfg.simple.entries.push_back({z, A});
        } else {
            if (!je.contains("B")) fail(where, "pole_order=double requires 'B'");
            cfg.dbl.entries.push_back({z, A, parse_complex(je["B"], where + ".B")});
        }
    }

    // grid
    if (!root.contains("grid")) fail("config", "missing 'grid'");
    const json& jg = root["grid"];
    reject_unknown_keys(jg, "grid", {"x", "t"});
    auto parse_axis = [&](const char* key, double& a, double& b, int& n) {
        if (!jg.contains(key) || !jg[key].is_array() || jg[key].size() != 3)
            fail("grid", std::string("'") + key + "' must be [lo, hi, n]");
        a = jg[key][0].get<double>();
        b = jg[key][1].get<double>();
        n = jg[key][2].get<int>();
        if (n < 1) fail("grid", std::string("'") + key + "' needs n >= 1");
        if (n > 1 && !(b > a)) fail("grid", std::string("'") + key + "' needs hi > lo");
    };
    parse_axis("x", cfg.grid.x0, cfg.grid.x1, cfg.grid.nx);
    parse_axis("t", cfg.grid.t0, cfg.grid.t1, cfg.grid.nt);

    // modes
    if (root.contains("modes")) {
        const json& jo = root["modes"];
        reject_unknown_keys(jo, "modes", {"sign", "dispersion", "gauge"});
        const std::string sign = jo.value("sign", "calibrated");
        if (sign == "calibrated") cfg.modes.sign = engine::SignMode::Calibrated;
        else if (sign == "flipped") cfg.modes.sign = engine::SignMode::Flipped;
        else fail("modes.sign", "expected 'calibrated' or 'flipped'");
        const std::string disp = jo.value("dispersion", "lax");
        if (disp == "printed") cfg.modes.dispersion = DispersionMode::Printed;
        else if (disp == "lax") cfg.modes.dispersion = DispersionMode::Lax;
        else fail("modes.dispersion", "expected 'printed' or 'lax'");
        const std::string gauge = jo.value("gauge", "gauge_fixed");
        if (gauge == "gauge_fixed") cfg.modes.gauge = GaugeMode::GaugeFixed;
        else if (gauge == "verbatim") cfg.modes.gauge = GaugeMode::Verbatim;
        else fail("modes.gauge", "expected 'gauge_fixed' or 'verbatim'");
    }

    // outputs
    if (root.contains("outputs")) {
        if (!root["outputs"].is_array()) fail("outputs", "must be an array");
        int oi = 0;
        for (const json& jo : root["outputs"]) {
            const std::string where = "outputs[" + std::to_string(oi++) + "]";
            reject_unknown_keys(jo, where, {"kind", "path"});
            OutputSpec os;
            os.kind = jo.value("kind", "");
            os.path = jo.value("path", "");
            if (os.kind != "csv" && os.kind != "pgm" && os.kind != "json-meta")
                fail(where, "kind must be csv | pgm | json-meta");
            if (os.path.empty()) fail(where, "missing 'path'");
            cfg.outputs.push_back(std::move(os));
        }
    }

    // spectrum validation happens here so config errors carry exit code 2
    auto violations = cfg.spectrum_violations();
    if (!violations.empty()) {
        std::string msg = "spectrum validation failed:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw ConfigError(msg);
    }
    return cfg;
}

std::vector<std::string> RunConfig::spectrum_violations() const {
    return pole_order == spectrum::PoleOrder::Simple
               ? spectrum::validate(simple, model)
               : spectrum::validate(dbl, model);
}

spectrum::ExpandedSpectrum RunConfig::expand() const {
    return pole_order == spectrum::PoleOrder::Simple
               ? spectrum::expand_simple(simple, model)
               : spectrum::expand_double(dbl, model);
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file: " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    root["model"] = {
        {"alpha2", cfg.model.alpha2}, {"alpha3", cfg.model.alpha3},
        {"alpha4", cfg.model.alpha4}, {"alpha5", cfg.model.alpha5},
        {"psi_minus", {cfg.model.psi_minus.real(), cfg.model.psi_minus.imag()}},
    };
    if (cfg.model.zbc_limit_mode) root["model"]["zbc_limit_mode"] = true;
    json entries = json::array();
    if (cfg.pole_order == spectrum::PoleOrder::Simple) {
        for (const auto& e : cfg.simple.entries)
            entries.push_back({{"z", {e.z.real(), e.z.imag()}},
                               {"A", {e.A_plus.real(), e.A_plus.imag()}}});
    } else {
        for (const auto& e : cfg.dbl.entries)
            entries.push_back({{"z", {e.z.real(), e.z.imag()}},
                               {"A", {e.A_plus.real(), e.A_plus.imag()}},
                               {"B", {e.B_plus.real(), e.B_plus.imag()}}});
    }
    root["spectrum"] = {{"pole_order", to_string(cfg.pole_order)}, {"entries", entries}};
    root["grid"] = {{"x", {cfg.grid.x0, cfg.grid.x1, cfg.grid.nx}},
                    {"t", {cfg.grid.t0, cfg.grid.t1, cfg.grid.nt}}};
    root["modes"] = {{"sign", to_string(cfg.modes.sign)},
                     {"dispersion", to_string(cfg.modes.dispersion)},
                     {"gauge", to_string(cfg.modes.gauge)}};
    json outs = json::array();
    for (const auto& o : cfg.outputs) outs.push_back({{"kind", o.kind}, {"path", o.path}});
    root["outputs"] = outs;
    return root.dump(2);
}

std::string config_digest(const RunConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

void write_field_csv(const engine::SolutionField& field, const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write CSV: " + path.string());
    std::fputs("x,t,re,im,abs,flag\n", f);
    for (int j = 0; j < field.grid.nt; ++j) {
        for (int i = 0; i < field.grid.nx; ++i) {
            const cplx v = field.at(i, j);
            std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", field.grid.x(i),
                         field.grid.t(j), v.real(), v.imag(), std::abs(v),
                         int(field.flag(i, j)));
        }
    }
    if (std::fclose(f) != 0) throw std::runtime_error("I/O error closing " + path.string());
}

engine::SolutionField read_field_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "x,t,re,im,abs,flag")
        throw std::runtime_error("bad CSV header in " + path.string());
    std::vector<double> xs, ts;
    std::vector<cplx> vals;
    std::vector<std::uint8_t> flags;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x, t, re, im, ab;
        int fl;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg,%lg,%d", &x, &t, &re, &im,
                        &ab, &fl) != 6)
            throw std::runtime_error("bad CSV row in " + path.string());
        xs.push_back(x);
        ts.push_back(t);
        vals.emplace_back(re, im);
        flags.push_back(std::uint8_t(fl));
    }
    engine::SolutionField f;
    // infer grid: rows are t-outer, x-inner
    int nx = 1;
    while (nx < int(xs.size()) && ts[nx] == ts[0]) ++nx;
    const int nt = int(xs.size()) / nx;
    f.grid = {xs.front(), xs[nx - 1], nx, ts.front(), ts.back(), nt};
    f.values = std::move(vals);
    f.flags = std::move(flags);
    return f;
}

void write_heatmap_pgm(const engine::SolutionField& field, const std::filesystem::path& path) {
    if (field.grid.nx < 2 || field.grid.nt < 2)
        throw std::invalid_argument("write_heatmap_pgm: nx, nt >= 2 required");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const cplx& v : field.values) {
        const double a = std::abs(v);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    const bool degenerate = !(hi > lo);
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write PGM: " + path.string());
    std::fprintf(f, "P5\n# min=%s max=%s digest=%s%s\n%d %d\n255\n", fmt17(lo).c_str(),
                 fmt17(hi).c_str(), field.metadata.config_digest.c_str(),
                 degenerate ? " degenerate" : "", field.grid.nx, field.grid.nt);
    std::vector<unsigned char> row(field.grid.nx);
    for (int j = 0; j < field.grid.nt; ++j) {
        for (int i = 0; i < field.grid.nx; ++i) {
            if (degenerate) {
                row[i] = 128;
            } else {
                const double a = std::abs(field.at(i, j));
                row[i] = static_cast<unsigned char>(
                    std::lround(255.0 * (a - lo) / (hi - lo)));
            }
        }
        std::fwrite(row.data(), 1, row.size(), f);
    }
    if (std::fclose(f) != 0) throw std::runtime_error("I/O error closing " + path.string());
}

void write_metadata_json(const engine::SolutionField& field, const std::filesystem::path& path) {
    json j = {
        {"config_digest", field.metadata.config_digest},
        {"pole_order", to_string(field.metadata.pole_order)},
        {"sign_convention", field.metadata.sign_convention},
        {"dispersion_mode", field.metadata.dispersion_mode},
        {"gauge_mode", field.metadata.gauge_mode},
        {"gamma", field.metadata.gamma},
        {"max_condition_estimate", field.metadata.max_condition},
        {"flagged_points", field.metadata.flagged_points},
        {"library_version", kLibraryVersion},
        {"grid",
         {{"x", {field.grid.x0, field.grid.x1, field.grid.nx}},
          {"t", {field.grid.t0, field.grid.t1, field.grid.nt}}}},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write metadata: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

}  // namespace gfonls::io
