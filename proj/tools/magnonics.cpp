// magnonics — command-line front end.
//
//   magnonics point  [params]                      one full JSON report
//   magnonics sweep  --axis name:start:stop:count [--axis ...] [params]
//   magnonics figure NAME [params]                 preset grids
//
// Exit codes: 0 ok, 1 bad usage/config, 2 unstable operating point (point).

#include "magnonics/io.hpp"
#include "magnonics/sweep.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace magnonics;

struct ParamFlags {
    std::optional<double> delta_d, delta_o, g1, g2, lambda, r, kappa_d_mhz, kappa_o_ratio, temp_mk, omega_d_ghz;
};

struct RunConfig {
    ParamFlags flags;
    std::vector<std::string> axes;
    std::string figure;
    std::optional<int> points;
    std::string format = "csv";
    std::string out;
    unsigned threads = 1;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--delta-d", f.delta_d, "cavity detuning [kappa_d]");
    cmd->add_option("--delta-o", f.delta_o, "magnon detuning, both modes [kappa_d]");
    cmd->add_option("--g1", f.g1, "magnon 1 coupling [kappa_d]");
    cmd->add_option("--g2", f.g2, "magnon 2 coupling [kappa_d]");
    cmd->add_option("--lambda", f.lambda, "OPA gain [kappa_d]")->check(CLI::NonNegativeNumber);
    cmd->add_option("--r", f.r, "input squeezing parameter")->check(CLI::NonNegativeNumber);
    cmd->add_option("--kappa-d-mhz", f.kappa_d_mhz, "cavity linewidth kappa_d/2pi [MHz]")->check(CLI::PositiveNumber);
    cmd->add_option("--kappa-o-ratio", f.kappa_o_ratio, "magnon linewidth kappa_o/kappa_d")->check(CLI::PositiveNumber);
    cmd->add_option("--temp-mk", f.temp_mk, "bath temperature [mK]")->check(CLI::NonNegativeNumber);
    cmd->add_option("--omega-d-ghz", f.omega_d_ghz, "cavity frequency omega_d/2pi [GHz]")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg, bool with_format) {
    if (with_format) {
        cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
    cmd->add_option("--out", cfg.out, "output path (default stdout)");
    cmd->add_option("--threads", cfg.threads, "worker threads for grid evaluation")->check(CLI::PositiveNumber);
}

struct Effective {
    SystemParams params;
    PhysicalEnv env;
    double kappa_d_mhz = 5.0;
};

// Explicit flags override `base`; any override is listed in `overridden`.
Effective apply_flags(const ParamFlags& f, Effective eff, std::vector<std::string>* overridden = nullptr) {
    auto note = [&](const char* k) {
        if (overridden) overridden->emplace_back(k);
    };
    SystemParams& p = eff.params;
    if (f.delta_d) { p.delta_d = *f.delta_d; note("delta_d"); }
    if (f.delta_o) { p.delta_o1 = p.delta_o2 = *f.delta_o; note("delta_o"); }
    if (f.g1) { p.g1 = *f.g1; note("g1"); }
    if (f.g2) { p.g2 = *f.g2; note("g2"); }
    if (f.lambda) { p.lambda = *f.lambda; note("lambda"); }
    if (f.r) { p.r = *f.r; note("r"); }
    if (f.kappa_o_ratio) { p.kappa_o1 = p.kappa_o2 = *f.kappa_o_ratio * p.kappa_d; note("kappa_o_ratio"); }
    if (f.kappa_d_mhz) { eff.kappa_d_mhz = *f.kappa_d_mhz; note("kappa_d_mhz"); }
    if (f.omega_d_ghz) { eff.env.omega_d_hz = *f.omega_d_ghz * 1e9; note("omega_d_ghz"); }
    if (f.temp_mk) { eff.env.temperature_k = *f.temp_mk * 1e-3; note("temperature_mk"); }
    if (f.temp_mk || f.omega_d_ghz) sync_occupations(p, eff.env);
    p.validate();
    return eff;
}

Effective defaults() {
    Effective eff;
    eff.params = SystemParams::baseline();
    eff.env = PhysicalEnv{};
    sync_occupations(eff.params, eff.env);
    return eff;
}

Metadata metadata_for(const Effective& eff) {
    Metadata meta = describe(eff.params, eff.env);
    meta.push_back({"kappa_d_mhz", format_number(eff.kappa_d_mhz)});
    meta.push_back({"temperature_mk", format_number(eff.env.temperature_k * 1e3)});
    meta.push_back({"units", "rates, couplings, detunings in units of kappa_d"});
    return meta;
}

void describe_axes(Metadata& meta, const std::vector<SweepAxis>& axes) {
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const SweepAxis& a = axes[i];
        meta.push_back({"axis" + std::to_string(i + 1),
                        std::string(to_string(a.param)) + ":" + format_number(a.start) + ":" +
                            format_number(a.stop) + ":" + std::to_string(a.count)});
    }
}

int emit(const RunConfig& cfg, const Metadata& meta, const std::vector<SweepRecord>& records) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "error: cannot open '" << cfg.out << "' for writing\n";
            return 1;
        }
        os = &file;
    }
    if (cfg.format == "json") {
        *os << to_json(meta, records).dump(2) << '\n';
    } else {
        write_csv(*os, meta, records);
    }
    return os->good() ? 0 : 1;
}

int cmd_point(const RunConfig& cfg) {
    const Effective eff = apply_flags(cfg.flags, defaults());
    const auto report = evaluate_point(eff.params);
    const std::string text = point_json(metadata_for(eff), report).dump(2);
    if (cfg.out.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream file(cfg.out);
        if (!file) {
            std::cerr << "error: cannot open '" << cfg.out << "' for writing\n";
            return 1;
        }
        file << text << '\n';
    }
    return report ? 0 : 2;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.axes.empty() || cfg.axes.size() > 2) throw ConfigError("sweep needs one or two --axis options");
    std::vector<SweepAxis> axes;
    for (const std::string& s : cfg.axes) axes.push_back(parse_axis(s));

    const Effective eff = apply_flags(cfg.flags, defaults());
    Metadata meta = metadata_for(eff);
    describe_axes(meta, axes);
    return emit(cfg, meta, run_sweep(eff.params, eff.env, axes, cfg.threads));
}

int cmd_figure(const RunConfig& cfg) {
    FigurePreset preset = figure_preset(cfg.figure);
    if (cfg.points) {
        if (*cfg.points < 2) throw ConfigError("--points must be >= 2");
        for (SweepAxis& a : preset.axes) a.count = *cfg.points;
    }

    Effective base;
    base.params = preset.params;
    base.env = preset.env;
    std::vector<std::string> overridden;
    const Effective eff = apply_flags(cfg.flags, base, &overridden);
    preset.params = eff.params;
    preset.env = eff.env;

    Metadata meta{{"figure", preset.name}, {"quantity", preset.quantity}};
    for (const MetaEntry& m : metadata_for(eff)) meta.push_back(m);
    describe_axes(meta, preset.axes);
    if (preset.series) {
        std::string values;
        for (double v : preset.series->values) values += (values.empty() ? "" : " ") + format_number(v);
        meta.push_back({"axis2", std::string(to_string(preset.series->param)) + " series {" + values + "}"});
    }
    for (const PresetValue& pv : preset.provenance) {
        meta.push_back({"source." + pv.key, pv.value + (pv.stated ? " (stated)" : " (default)")});
    }
    for (const std::string& k : overridden) meta.push_back({"source." + k, "command-line override"});
    if (cfg.points) meta.push_back({"source.points", std::to_string(*cfg.points) + " (command-line override)"});

    return emit(cfg, meta, run_figure(preset, cfg.threads));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state correlations of a cavity with an OPA and two magnon modes"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* point = app.add_subcommand("point", "evaluate one operating point (JSON to stdout)");
    add_param_flags(point, cfg.flags);
    add_output_flags(point, cfg, false);

    auto* sweep = app.add_subcommand("sweep", "evaluate a 1-D or 2-D parameter grid");
    add_param_flags(sweep, cfg.flags);
    add_output_flags(sweep, cfg, true);
    sweep->add_option("--axis", cfg.axes, "name:start:stop:count (names: delta_d delta_o lambda r temperature_mk g n_o)")
        ->required();

    auto* figure = app.add_subcommand("figure", "run a figure preset");
    figure->add_option("name", cfg.figure, "fig2a..fig7b")->required();
    add_param_flags(figure, cfg.flags);
    add_output_flags(figure, cfg, true);
    figure->add_option("--points", cfg.points, "override the point count of every preset axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*point) return cmd_point(cfg);
        if (*sweep) return cmd_sweep(cfg);
        return cmd_figure(cfg);
    } catch (const magnonics::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const magnonics::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
