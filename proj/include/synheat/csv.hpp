// csv.hpp: CSV emission for every table the tools produce
//
// Numbers are written with 17 significant digits; NaN becomes an empty cell.
// Resonator indices are 1-based in files.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "synheat/figures.hpp"
#include "synheat/model.hpp"
#include "synheat/scenarios.hpp"

namespace synheat {

std::string format_number(double x);

struct PowerRecord {
    std::size_t source;   // 0-based
    std::size_t observer; // 0-based
    double P;
    double P_em;
    int n_max;
    double beta, Omega;
    Eigen::VectorXd theta;
};

/// Rows of a power matrix whose source row is nonzero (hot baths only).
std::vector<PowerRecord> power_records(const PowerMatrix& pm, const ResonatorNetwork& net,
                                       const ModulationProtocol& mod, int n_max);

void write_power_csv(std::ostream& out, const std::vector<PowerRecord>& rows);
/// Columns omega_rad_s, source_bath, observer, spectral_power_W_per_rad_s (= P_omega / 2 pi).
void write_spectrum_csv(std::ostream& out, const SpectrumPair& sp, std::size_t source, std::size_t target);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_fig3a_csv(std::ostream& out, const std::vector<NormalizedRow>& rows);
/// beta, theta, dP_exact_W, dP_pa1_W, dP_pa2_W, dP_closed_W (+ columns divided by P0 when normalized).
void write_perturbation_csv(std::ostream& out, const std::vector<PerturbationRow>& rows, bool normalized);
void write_fig7_csv(std::ostream& out, const std::vector<Fig7Row>& rows);
void write_compare_csv(std::ostream& out, const CompareReport& report);

} // namespace synheat
