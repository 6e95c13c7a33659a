// config.hpp: YAML run configuration
//
//   constants:  {hbar: .., kB: ..}                       optional
//   network:    {omega: [..], kappa: [..], T: [..], hermitian: bool,
//                couplings: [[i, j, re, im], ...]}       1-based i, j
//   modulation: {beta: .., Omega: .., theta: [..] | theta_over_pi: [..], mask: [..]}
//   chain4:     {omega0, kappa_ratio, g_ratio, beta_ratio, Omega_ratio,
//                theta_over_pi, T_hot}                   instead of network + modulation
//   solver:     {n_max, quad_tol, T_hot, source, target, oracle_rtol,
//                oracle_steps_per_period}                optional, 1-based source/target
//
// With hermitian: true a coupling given only as (i, j) is mirrored to
// (j, i) as its complex conjugate. Unknown keys are errors.

#pragma once

#include <optional>
#include <string>

#include "synheat/model.hpp"
#include "synheat/scenarios.hpp"

namespace synheat {

struct Config {
    PhysicalConstants consts;
    ResonatorNetwork net;
    ModulationProtocol mod;
    RunSettings settings;
    std::optional<Chain4Setup> chain4;
};

/// Throws ValidationError on malformed input or unknown keys.
Config parse_config(const std::string& yaml_text);
Config load_config(const std::string& path);

/// The standard chain with both end baths at T_hot, so each end row of a power
/// matrix is one direction of the forward/backward protocol.
Config chain4_config(const Chain4Setup& setup, double beta_ratio, double theta_over_pi);

} // namespace synheat
