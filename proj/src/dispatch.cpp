#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "gfonls/io.hpp"
#include "gfonls/lax.hpp"
#include "gfonls/spectral.hpp"
#include "gfonls/trace.hpp"
#include "gfonls/verify.hpp"

namespace gfonls::io {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

engine::SolutionField simulate_field(const RunConfig& cfg, int threads) {
    auto es = cfg.expand();
    auto field = engine::evaluate_grid(es, cfg.model, cfg.grid, cfg.modes, threads);
    field.metadata.config_digest = config_digest(cfg);
    field.metadata.library_version = kLibraryVersion;
    return field;
}

int write_outputs(const engine::SolutionField& field, const RunConfig& cfg) {
    for (const auto& out : cfg.outputs) {
        if (out.kind == "csv") write_field_csv(field, out.path);
        else if (out.kind == "pgm") write_heatmap_pgm(field, out.path);
        else write_metadata_json(field, out.path);
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, int threads) {
    RunConfig cfg = load_config(config_path);
    auto field = simulate_field(cfg, threads);
    if (field.metadata.flagged_points ==
        std::int64_t(field.grid.nx) * field.grid.nt) {
        std::cerr << "simulate: every grid point is flagged (numerical failure)\n";
        return kExitNumerical;
    }
    write_outputs(field, cfg);
    std::cout << "simulate: " << field.grid.nx << "x" << field.grid.nt
              << " grid, digest " << field.metadata.config_digest
              << ", flagged " << field.metadata.flagged_points
              << ", max condition " << field.metadata.max_condition << "\n";
    return kExitOk;
}

json residual_to_json(const verify::ResidualReport& r, const std::string& digest) {
    return json{
        {"config_digest", digest},
        {"sup_norm", r.sup_norm},
        {"l2_norm", r.l2_norm},
        {"per_term",
         {{"time_derivative", r.term_time},
          {"K2", r.term_k2},
          {"K3", r.term_k3},
          {"K4", r.term_k4},
          {"K5", r.term_k5}}},
        {"hx", r.hx},
        {"ht", r.ht},
        {"gauge_mode", r.gauge_mode},
        {"k4_form", r.k4_form},
        {"gamma", r.gamma},
        {"trim", {r.trim_x, r.trim_t}},
        {"convergence_order",
         r.convergence_order ? json(*r.convergence_order) : json(nullptr)},
        {"library_version", kLibraryVersion},
    };
}

int cmd_verify(const std::string& config_path, int refine, const std::string& k4_form,
               const std::string& out_path, int threads) {
    RunConfig cfg = load_config(config_path);
    verify::ResidualOptions opts;
    opts.gauge = cfg.modes.gauge;
    if (k4_form == "printed") opts.k4 = verify::K4Form::Printed;
    else if (k4_form == "completed") opts.k4 = verify::K4Form::Completed;
    else throw ConfigError("--k4 must be printed|completed");

    auto field = simulate_field(cfg, threads);
    auto rep = verify::residual(field, cfg.model, opts);
    if (refine > 0) {
        RunConfig fine = cfg;
        fine.grid.nx = (cfg.grid.nx - 1) * 2 + 1;
        fine.grid.nt = (cfg.grid.nt - 1) * 2 + 1;
        auto fero = verify::residual(simulate_field(fine, threads), fine.model, opts);
        if (fero.sup_norm > 0.0)
            rep.convergence_order = std::log2(rep.sup_norm / fero.sup_norm);
    }
    json j = residual_to_json(rep, config_digest(cfg));
    j["boundary_deviation"] = verify::boundary_check(field, cfg.model);
    j["phase_jump"] = verify::phase_jump(field);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_trace(const std::string& config_path, const std::string& contour, int samples,
              const std::string& out_path) {
    RunConfig cfg = load_config(config_path);
    std::vector<cplx> zs;
    if (cfg.pole_order == spectrum::PoleOrder::Simple)
        for (const auto& e : cfg.simple.entries) zs.push_back(e.z);
    else
        for (const auto& e : cfg.dbl.entries) zs.push_back(e.z);

    std::FILE* f = out_path.empty() ? stdout : std::fopen(out_path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + out_path);
    std::fputs("re_z,im_z,re_s11,im_s11,re_s22,im_s22\n", f);
    for (int i = 0; i < samples; ++i) {
        cplx z;
        if (contour == "real") {
            const double lo = -5.0 * std::max(1.0, cfg.model.psi0);
            z = {lo + (i + 0.5) * (-2.0 * lo) / samples, 0.0};
        } else {
            const double phi = 2.0 * std::numbers::pi * (i + 0.5) / samples;
            z = std::polar(cfg.model.psi0, phi);
        }
        const cplx s11 = trace::s11_reflectionless(z, zs, cfg.model, cfg.pole_order);
        const cplx s22 = trace::s22_reflectionless(z, zs, cfg.model, cfg.pole_order);
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", z.real(), z.imag(),
                     s11.real(), s11.imag(), s22.real(), s22.imag());
    }
    if (f != stdout) std::fclose(f);
    return kExitOk;
}

int cmd_calibrate(const std::string& config_path, int samples, const std::string& out_path) {
    RunConfig cfg = load_config(config_path);
    std::mt19937 rng(20240915u);
    std::uniform_real_distribution<double> rad(0.15, 8.0), ang(0.05, std::numbers::pi - 0.05);
    std::vector<cplx> pts;
    pts.reserve(samples);
    while (int(pts.size()) < samples) {
        const cplx z = std::polar(rad(rng) * cfg.model.psi0, ang(rng));
        if (std::abs(spectral::lambda_of_z(z, cfg.model)) < 1e-6) continue;
        pts.push_back(z);
    }
    auto result = lax::calibrate(cfg.model, pts);
    json arr = json::array();
    for (const auto& r : result.reports) {
        json jr = {
            {"z", {r.z.real(), r.z.imag()}},
            {"omega_printed", {r.omega_printed.real(), r.omega_printed.imag()}},
            {"omega_lax", {r.omega_lax.real(), r.omega_lax.imag()}},
            {"abs_discrepancy", r.abs_discrepancy},
        };
        json terms = json::array();
        for (const auto& tr : r.per_term)
            terms.push_back({{"term", tr.term},
                             {"omega_printed", {tr.omega_printed.real(), tr.omega_printed.imag()}},
                             {"omega_lax", {tr.omega_lax.real(), tr.omega_lax.imag()}},
                             {"abs_discrepancy", tr.abs_discrepancy},
                             {"commutator_defect", tr.commutator_defect}});
        jr["per_term"] = terms;
        if (r.error) jr["error"] = *r.error;
        arr.push_back(jr);
    }
    json doc = {{"verdict", result.verdict},
                {"max_discrepancy", result.max_discrepancy},
                {"reports", arr}};
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << doc.dump(2) << "\n";
    }
    return kExitOk;
}

// "2pi (0 mod 2pi)"-style rendering; integer multiples of pi print exactly
std::string pi_multiples(double v) {
    const double k = v / std::numbers::pi;
    const double r = std::round(k);
    char buf[64];
    if (std::abs(k - r) < 1e-9) {
        const long n = long(r);
        if (n == 0) return "0";
        if (n == 1) return "π";
        if (n == -1) return "-π";
        std::snprintf(buf, sizeof buf, "%ldπ", n);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.6gπ", k);
    return buf;
}

int cmd_theta(const std::string& config_path) {
    RunConfig cfg = load_config(config_path);
    double raw, red;
    if (cfg.pole_order == spectrum::PoleOrder::Simple) {
        raw = spectrum::theta_condition_raw(cfg.simple);
        red = spectrum::theta_condition(cfg.simple);
    } else {
        raw = spectrum::theta_condition_raw(cfg.dbl);
        red = spectrum::theta_condition(cfg.dbl);
    }
    std::cout << pi_multiples(raw) << " (" << pi_multiples(red) << " mod 2π)\n";
    return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"reflectionless soliton/breather construction and verification"};
    app.require_subcommand(1);

    std::string config_path, out_path, contour = "real", k4_form = "completed";
    int threads = 1, samples = 50, refine = 0;

    auto* sim = app.add_subcommand("simulate", "evaluate psi on the configured grid");
    sim->add_option("-c,--config", config_path)->required();
    sim->add_option("--threads", threads);

    auto* ver = app.add_subcommand("verify", "finite-difference residual report");
    ver->add_option("-c,--config", config_path)->required();
    ver->add_option("--refine", refine);
    ver->add_option("--k4", k4_form);
    ver->add_option("-o,--output", out_path);
    ver->add_option("--threads", threads);

    auto* tra = app.add_subcommand("trace", "sample s11/s22 along a contour");
    tra->add_option("-c,--config", config_path)->required();
    tra->add_option("--contour", contour)->check(CLI::IsMember({"real", "circle"}));
    tra->add_option("--samples", samples);
    tra->add_option("-o,--output", out_path);

    auto* cal = app.add_subcommand("calibrate", "boundary Lax dispersion report");
    cal->add_option("-c,--config", config_path)->required();
    cal->add_option("--samples", samples);
    cal->add_option("-o,--output", out_path);

    auto* the = app.add_subcommand("theta", "print the theta condition");
    the->add_option("-c,--config", config_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, threads);
        if (ver->parsed()) return cmd_verify(config_path, refine, k4_form, out_path, threads);
        if (tra->parsed()) return cmd_trace(config_path, contour, samples, out_path);
        if (cal->parsed()) return cmd_calibrate(config_path, samples, out_path);
        if (the->parsed()) return cmd_theta(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}

}  // namespace gfonls::io
