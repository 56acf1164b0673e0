#include "gacz/config.hpp"
#include "gacz/interference.hpp"
#include "gacz/io.hpp"
#include "gacz/kernels.hpp"
#include "gacz/protocol.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gacz;

// Shared flags for the config-driven subcommands.
struct RunArgs {
    std::string config_path;
    std::string preset_id;
    std::string out_csv;
    std::string out_json;
    std::string out_gnuplot;
    bool json_to_stdout = false;
    bool calibrate = false;
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
    cmd->add_option("config", args.config_path, "JSON config file (see README for the schema)");
    cmd->add_option("--preset", args.preset_id, "built-in parameter set (2d 2e 3c 3d 3e 4a 4b)");
    cmd->add_option("--out", args.out_csv, "CSV destination (default stdout)");
    cmd->add_option("--out-json", args.out_json, "write the JSON summary to this file");
    cmd->add_option("--gnuplot", args.out_gnuplot, "write a companion gnuplot script");
    cmd->add_flag("--json", args.json_to_stdout, "print the JSON summary to stdout");
    cmd->add_flag("--calibrate", args.calibrate, "recalibrate omega2 before running");
}

RunConfig resolve_config(const RunArgs& args) {
    if (args.config_path.empty() && args.preset_id.empty())
        throw CLI::ValidationError("give a config file or --preset");
    RunConfig rc;
    if (!args.config_path.empty()) {
        rc = load_config(args.config_path);
    } else {
        rc.gate = preset(args.preset_id);
    }
    if (!args.preset_id.empty() && !args.config_path.empty())
        throw CLI::ValidationError("--preset and a config file are mutually exclusive");
    if (!args.out_csv.empty()) rc.output.csv = args.out_csv;
    if (!args.out_json.empty()) rc.output.json = args.out_json;
    if (!args.out_gnuplot.empty()) rc.output.gnuplot = args.out_gnuplot;
    if (args.calibrate) rc.calibrate = true;
    return rc;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    writer(out);
}

void emit_text(const std::string& path, const std::string& text) {
    emit(path, [&](std::ostream& os) { os << text << '\n'; });
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::vector<CouplingPoint> parse_points(const std::string& text) {
    // "site:strength,site:strength,..."
    std::vector<CouplingPoint> points;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--points expects site:strength pairs");
        try {
            points.push_back({std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw CLI::ValidationError("--points expects numeric site:strength pairs");
        }
    }
    if (points.empty()) throw CLI::ValidationError("--points list is empty");
    return points;
}

int cmd_df(bool two_point, bool three_point, int dx, double zeta, const std::string& points_text,
           bool as_json) {
    std::vector<DfMode> modes;
    if (!points_text.empty()) {
        if (two_point || three_point)
            throw CLI::ValidationError("--points excludes --two-point/--three-point");
        modes = df_general(parse_points(points_text));
    } else if (two_point && !three_point) {
        modes = df_two_point(dx);
    } else if (three_point && !two_point) {
        modes = df_three_point(dx, zeta);
    } else {
        throw CLI::ValidationError("pick exactly one of --two-point, --three-point, --points");
    }
    if (as_json)
        std::cout << df_json(modes) << '\n';
    else
        write_df_table(std::cout, modes);
    return 0;
}

int cmd_dynamics(const RunArgs& args) {
    RunConfig rc = resolve_config(args);
    if (rc.calibrate) {
        rc.gate.omega2 = calibrate_omega2(rc.gate, rc.calibration_halfwidth);
        std::cerr << "calibrated omega2/J = " << format_double(rc.gate.omega2) << '\n';
    }
    const DynamicsResult dyn = run_dynamics(rc.gate);
    print_warnings(dyn.warnings);
    emit(rc.output.csv, [&](std::ostream& os) { write_dynamics_csv(os, dyn); });
    if (!rc.output.gnuplot.empty())
        emit(rc.output.gnuplot,
             [&](std::ostream& os) { write_dynamics_gnuplot(os, rc.output.csv); });
    const std::string summary = dynamics_json(dyn);
    if (!rc.output.json.empty()) emit_text(rc.output.json, summary);
    if (args.json_to_stdout) std::cout << summary << '\n';
    return 0;
}

int cmd_fidelity(const RunArgs& args) {
    RunConfig rc = resolve_config(args);
    if (rc.calibrate) {
        rc.gate.omega2 = calibrate_omega2(rc.gate, rc.calibration_halfwidth);
        std::cerr << "calibrated omega2/J = " << format_double(rc.gate.omega2) << '\n';
    }
    const CzResult cz = run_cz(rc.gate);
    print_warnings(cz.warnings);
    emit(rc.output.csv, [&](std::ostream& os) { write_fidelity_csv(os, cz); });
    if (!rc.output.gnuplot.empty())
        emit(rc.output.gnuplot,
             [&](std::ostream& os) { write_fidelity_gnuplot(os, rc.output.csv); });
    const std::string summary = fidelity_json(cz, rc.gate.omega2);
    if (!rc.output.json.empty()) emit_text(rc.output.json, summary);
    if (args.json_to_stdout) std::cout << summary << '\n';
    std::cerr << "F_process_max=" << format_double(cz.best.process_fidelity)
              << " at tJ=" << format_double(cz.best.gate_time)
              << " (F_avg=" << format_double(cz.best.average_fidelity) << ")\n";
    return 0;
}

int cmd_sweep(const RunArgs& args, const std::vector<double>& g_list, double gamma_q,
              double gamma_c) {
    RunConfig rc = resolve_config(args);
    std::vector<double> gs = g_list;
    if (gs.empty()) throw CLI::ValidationError("--g-list is required");
    const std::vector<SweepRow> rows = sweep_g(rc.gate, gs, gamma_q, gamma_c, rc.calibrate);
    for (const SweepRow& r : rows)
        if (!r.error.empty())
            std::cerr << "warning: sweep point g/J=" << format_double(r.g)
                      << " failed: " << r.error << '\n';
    emit(rc.output.csv, [&](std::ostream& os) { write_sweep_csv(os, rows); });
    if (!rc.output.gnuplot.empty())
        emit(rc.output.gnuplot, [&](std::ostream& os) { write_sweep_gnuplot(os, rc.output.csv); });
    const std::string summary = sweep_json(rows);
    if (!rc.output.json.empty()) emit_text(rc.output.json, summary);
    if (args.json_to_stdout) std::cout << summary << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"controlled-Z gates between giant atoms in a coupled-cavity array"};
    app.require_subcommand(1);

    // df
    auto* df = app.add_subcommand("df", "decoherence-free frequencies of a coupling geometry");
    bool two_point = false, three_point = false, df_json_flag = false;
    int df_dx = 2;
    double df_zeta = 1.0;
    std::string points_text;
    df->add_flag("--two-point", two_point, "two equal coupling points");
    df->add_flag("--three-point", three_point, "three points with middle weight zeta");
    df->add_option("--dx", df_dx, "spacing between adjacent points (sites)");
    df->add_option("--zeta", df_zeta, "relative middle-point strength");
    df->add_option("--points", points_text, "explicit site:strength list, comma separated");
    df->add_flag("--json", df_json_flag, "machine-readable output");

    // config-driven commands
    RunArgs dyn_args, fid_args, sweep_args;
    auto* dynamics = app.add_subcommand("dynamics", "pair-state populations over time");
    add_run_options(dynamics, dyn_args);
    auto* fidelity = app.add_subcommand("fidelity", "process fidelity of the CZ gate over time");
    add_run_options(fidelity, fid_args);
    auto* sweep = app.add_subcommand("sweep", "best fidelity and gate time across couplings");
    add_run_options(sweep, sweep_args);
    std::vector<double> g_list;
    double gamma_q = 0.0, gamma_c = 0.0;
    sweep->add_option("--g-list", g_list, "coupling strengths g/J, ascending")->delimiter(',');
    sweep->add_option("--gamma-q", gamma_q, "atomic decay rate per quantum, units of J");
    sweep->add_option("--gamma-c", gamma_c, "cavity decay rate per photon, units of J");

    try {
        app.parse(argc, argv);
        if (const char* env = std::getenv("GACZ_KERNELS")) gacz::select_kernels(env);
        if (df->parsed())
            return cmd_df(two_point, three_point, df_dx, df_zeta, points_text, df_json_flag);
        if (dynamics->parsed()) return cmd_dynamics(dyn_args);
        if (fidelity->parsed()) return cmd_fidelity(fid_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args, g_list, gamma_q, gamma_c);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const gacz::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 3;
    } catch (const gacz::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}
