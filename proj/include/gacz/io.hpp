#pragma once

#include "gacz/interference.hpp"
#include "gacz/protocol.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gacz {

// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

void write_df_table(std::ostream& os, const std::vector<DfMode>& modes);
std::string df_json(const std::vector<DfMode>& modes);

// CSV emitters, header first, one row per sample.
void write_dynamics_csv(std::ostream& os, const DynamicsResult& dyn);
void write_fidelity_csv(std::ostream& os, const CzResult& cz);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

std::string dynamics_json(const DynamicsResult& dyn);
std::string fidelity_json(const CzResult& cz, double omega2_used);
std::string sweep_json(const std::vector<SweepRow>& rows);

// Companion plot scripts for the CSVs above.
void write_dynamics_gnuplot(std::ostream& os, const std::string& csv_path);
void write_fidelity_gnuplot(std::ostream& os, const std::string& csv_path);
void write_sweep_gnuplot(std::ostream& os, const std::string& csv_path);

} // namespace gacz
