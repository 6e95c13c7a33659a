// timedomain_oracle.hpp: brute-force time stepping of the moment equations
//
// Integrates dy/dt = G(t) y + s with fixed-step RK4 from y = 0 until the
// cycle-averaged occupations stop changing, then reports one period. It
// shares no assembly code with the Fourier solvers beyond the moment
// ordering, so it serves as an independent check on both.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "synheat/model.hpp"

namespace synheat {

struct MomentState {
    double t;
    Eigen::VectorXcd y; // MomentIndexMap order
};

/// dy/dt = G y + s at time t.
struct MomentGenerator {
    Eigen::MatrixXcd G;
    Eigen::VectorXcd s;
};

struct OracleOptions {
    int steps_per_period{4096};
    /// When set, only this bath is driven; otherwise every bath contributes.
    std::optional<std::size_t> source;
    PhysicalConstants consts{};
};

MomentGenerator generator(const ResonatorNetwork& net, const ModulationProtocol& mod, double t,
                          const OracleOptions& opts = {});

/// Returns steps_per_period + 1 samples spanning one converged period
/// (first and last sample one period apart). Convergence: every cycle-averaged
/// diagonal moment changes by at most rtol (relative) between consecutive periods.
/// Throws ConvergenceError after max_periods or for an unusable step size.
std::vector<MomentState> evolve_to_cycle(const ResonatorNetwork& net, const ModulationProtocol& mod, double rtol,
                                         int max_periods = 2000, const OracleOptions& opts = {});

/// Composite-trapezoid average over the sampled period.
Eigen::VectorXcd cycle_average(const std::vector<MomentState>& samples);

struct PowerRow {
    Eigen::VectorXd P; // P(l) = power from `source` into bath l; P(source) = 0
    double P_em{0.0};
};

/// Powers from the explicit period average of a trajectory driven by `source` alone.
PowerRow cycle_average_power(const std::vector<MomentState>& samples, const ResonatorNetwork& net,
                             std::size_t source, const PhysicalConstants& consts = {});

/// Optional debugging dump: rows "t_s,moment_index,re,im".
void write_trajectory_csv(std::ostream& out, const std::vector<MomentState>& samples);

} // namespace synheat
