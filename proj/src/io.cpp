#include "gacz/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

namespace gacz {

namespace {

using nlohmann::json;

json mode_to_json(const DfMode& m) {
    return json{{"k", m.k}, {"omega_over_J", m.omega}, {"band_edge", m.band_edge}};
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_df_table(std::ostream& os, const std::vector<DfMode>& modes) {
    os << "k_DF,omega_DF_over_J,band_edge\n";
    for (const DfMode& m : modes)
        os << format_double(m.k) << ',' << format_double(m.omega) << ','
           << (m.band_edge ? "true" : "false") << '\n';
}

std::string df_json(const std::vector<DfMode>& modes) {
    json doc;
    doc["schema_version"] = 1;
    doc["modes"] = json::array();
    for (const DfMode& m : modes) doc["modes"].push_back(mode_to_json(m));
    return doc.dump(2);
}

void write_dynamics_csv(std::ostream& os, const DynamicsResult& dyn) {
    os << "t_J,n11,n20,norm\n";
    for (std::size_t i = 0; i < dyn.t.size(); ++i)
        os << format_double(dyn.t[i]) << ',' << format_double(dyn.n11[i]) << ','
           << format_double(dyn.n20[i]) << ',' << format_double(dyn.norm2[i]) << '\n';
}

void write_fidelity_csv(std::ostream& os, const CzResult& cz) {
    os << "t,process_fidelity,average_fidelity,phi1,phi2,trace_deficit\n";
    for (const FidelityPoint& p : cz.series)
        os << format_double(p.t) << ',' << format_double(p.process) << ','
           << format_double(p.average) << ',' << format_double(p.phi1) << ','
           << format_double(p.phi2) << ',' << format_double(p.trace_deficit) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "g_over_J,fidelity_process,fidelity_average,tau_J,omega2_calibrated,phi1,phi2\n";
    for (const SweepRow& r : rows) {
        if (!r.error.empty()) continue;  // failures go to the JSON/stderr report
        os << format_double(r.g) << ',' << format_double(r.process) << ','
           << format_double(r.average) << ',' << format_double(r.tau) << ','
           << format_double(r.omega2) << ',' << format_double(r.phi1) << ','
           << format_double(r.phi2) << '\n';
    }
}

std::string dynamics_json(const DynamicsResult& dyn) {
    json doc;
    doc["schema_version"] = 1;
    doc["samples"] = dyn.t.size();
    double peak11 = 0.0, peak20 = 0.0;
    for (double v : dyn.n11) peak11 = std::max(peak11, v);
    for (double v : dyn.n20) peak20 = std::max(peak20, v);
    doc["n11_max"] = peak11;
    doc["n20_max"] = peak20;
    doc["final_norm"] = dyn.norm2.empty() ? 0.0 : dyn.norm2.back();
    doc["warnings"] = dyn.warnings;
    return doc.dump(2);
}

std::string fidelity_json(const CzResult& cz, double omega2_used) {
    json doc;
    doc["schema_version"] = 1;
    doc["process_fidelity_max"] = cz.best.process_fidelity;
    doc["average_fidelity"] = cz.best.average_fidelity;
    doc["gate_time_J"] = cz.best.gate_time;
    doc["phi1"] = cz.best.local_phases.first;
    doc["phi2"] = cz.best.local_phases.second;
    doc["omega2_over_J"] = omega2_used;
    doc["warnings"] = cz.warnings;
    return doc.dump(2);
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    json doc;
    doc["schema_version"] = 1;
    doc["rows"] = json::array();
    for (const SweepRow& r : rows) {
        json row{{"g_over_J", r.g}};
        if (r.error.empty()) {
            row["fidelity_process"] = r.process;
            row["fidelity_average"] = r.average;
            row["tau_J"] = r.tau;
            row["omega2_calibrated"] = r.omega2;
            row["phi1"] = r.phi1;
            row["phi2"] = r.phi2;
        } else {
            row["error"] = r.error;
        }
        doc["rows"].push_back(row);
    }
    return doc.dump(2);
}

void write_dynamics_gnuplot(std::ostream& os, const std::string& csv_path) {
    os << "set datafile separator ','\n"
          "set xlabel 'tJ'\n"
          "set ylabel 'population'\n"
          "set yrange [0:1.05]\n"
          "set key top right\n"
          "plot '"
       << csv_path
       << "' skip 1 using 1:2 with lines title 'n11', '' skip 1 using 1:3 with lines title 'n20'\n";
}

void write_fidelity_gnuplot(std::ostream& os, const std::string& csv_path) {
    os << "set datafile separator ','\n"
          "set xlabel 'tJ'\n"
          "set ylabel 'process fidelity'\n"
          "set yrange [0:1.05]\n"
          "plot '"
       << csv_path << "' skip 1 using 1:2 with lines title 'F_CZ'\n";
}

void write_sweep_gnuplot(std::ostream& os, const std::string& csv_path) {
    os << "set datafile separator ','\n"
          "set xlabel 'g/J'\n"
          "set ylabel 'best process fidelity'\n"
          "set y2label 'gate time tJ'\n"
          "set y2tics\n"
          "plot '"
       << csv_path
       << "' skip 1 using 1:2 with linespoints title 'F_max', '' skip 1 using 1:4 axes x1y2 with "
          "linespoints title 'tau'\n";
}

} // namespace gacz
