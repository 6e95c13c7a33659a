// figures.hpp: presets for the standard four-resonator chain studies
//
// All ratios are relative to omega0 (beta, Omega) or pi (theta) on input;
// outputs carry absolute SI values. Normalized columns divide by a baseline
// computed at beta = 0 with the same method, never by a literal constant.

#pragma once

#include <vector>

#include "synheat/scenarios.hpp"

namespace synheat {

struct NormalizedRow {
    SweepRow row;
    double baseline;   // P(beta = 0) for this method
    double P_fwd_norm; // P_fwd / baseline
    double P_bwd_norm;
};

/// P14 and P41 versus beta for each theta and method.
std::vector<NormalizedRow> fig3a(const Chain4Setup& setup, const std::vector<double>& beta_ratios,
                                 const std::vector<double>& theta_over_pi, const std::vector<Method>& methods,
                                 const RunSettings& settings, unsigned parallel = 1);

struct PerturbationRow {
    double beta, theta;
    double dP_exact, dP_pa1, dP_pa2, dP_closed;
    double P0; // exact beta = 0 power used for normalization
};

/// Exact (qME) and perturbative P14 - P41 versus beta at fixed theta.
std::vector<PerturbationRow> fig3b(const Chain4Setup& setup, const std::vector<double>& beta_ratios,
                                   double theta_over_pi, const RunSettings& settings);

/// Rectification versus theta for each beta (qME unless methods say otherwise).
std::vector<SweepRow> fig4(const Chain4Setup& setup, const std::vector<double>& theta_over_pi,
                           const std::vector<double>& beta_ratios, const std::vector<Method>& methods,
                           const RunSettings& settings, unsigned parallel = 1);

/// Forward and backward spectra at beta = Omega = 0.05 omega0, theta = pi/2 by default.
SpectrumPair fig6(const Chain4Setup& setup, double beta_ratio, double theta_over_pi, const GridSpec& grid,
                  const RunSettings& settings);

struct Fig7Row {
    double beta;
    double P14_exact, P14_pa1, P14_pa2;
    double P41_exact, P41_pa1, P41_pa2;
};

/// Exact versus second-order powers along beta at fixed theta.
std::vector<Fig7Row> fig7(const Chain4Setup& setup, const std::vector<double>& beta_ratios, double theta_over_pi,
                          const RunSettings& settings);

/// Evenly spaced values lo, lo + step, ..., up to hi (inclusive within step/1000).
std::vector<double> linspace_step(double lo, double hi, double step);

} // namespace synheat
