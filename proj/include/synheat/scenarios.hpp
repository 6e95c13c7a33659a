// scenarios.hpp: forward/backward experiments on resonator chains, sweeps and method comparison
//
// Forward means bath `source` hot and the power arriving in bath `target`;
// backward swaps the hot bath but keeps the modulation untouched.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synheat/langevin_floquet.hpp"
#include "synheat/model.hpp"

namespace synheat {

enum class Method { qle, qme, oracle, pert1, pert2, closed };

std::string_view to_string(Method m);
/// Throws ValidationError for unknown names.
Method parse_method(std::string_view name);
/// Comma separated list, e.g. "qme,qle".
std::vector<Method> parse_methods(std::string_view list);

struct RunSettings {
    std::optional<int> n_max;  // per-method default when unset
    double quad_tol{1e-6};
    double oracle_rtol{1e-10};
    int oracle_steps_per_period{4096};
    double T_hot{300.0};
    std::size_t source{0};
    std::size_t target{3};
    PhysicalConstants consts{};
};

int default_n_max(Method m);

struct ForwardBackward {
    double P_fwd{0.0};
    double P_bwd{0.0};
};

/// Two solver runs: hot bath on `source`, then on `target`. For Method::closed
/// only the difference is defined; both powers are NaN and the difference is
/// returned by closed_form_difference().
ForwardBackward run_forward_backward(const ResonatorNetwork& net, const ModulationProtocol& mod, Method method,
                                     const RunSettings& settings = {});

/// Weak-coupling closed form for P_fwd - P_bwd of the four-resonator chain.
double closed_form_difference(const ResonatorNetwork& net, const ModulationProtocol& mod,
                              const RunSettings& settings = {});

/// (P14 - P41) / (P14 + P41). Throws std::domain_error if both are zero.
double rectification(double P14, double P41);

enum class SweepParameter { beta, theta, Omega };
std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepSpec {
    SweepParameter parameter{SweepParameter::beta};
    std::vector<double> values; // absolute units (rad/s or rad)
    ResonatorNetwork net;
    ModulationProtocol mod;
    RunSettings settings;
    std::vector<Method> methods{Method::qme};
    std::size_t theta_index{2}; // resonator whose phase a theta sweep sets
    unsigned parallel{1};
};

struct SweepRow {
    SweepParameter parameter;
    double value;
    Method method;
    double beta, theta, Omega;
    double P_fwd, P_bwd, dP, E;
    std::string status; // "ok" or the error message
    bool ok() const { return status == "ok"; }
};

/// One row per (value, method), ordered by value then method. A failing point
/// is reported in its row and does not abort the sweep.
std::vector<SweepRow> sweep(const SweepSpec& spec);

/// Copy of mod with the swept parameter set to value.
ModulationProtocol apply_parameter(const ModulationProtocol& mod, SweepParameter p, double value,
                                   std::size_t theta_index = 2);

struct GridSpec {
    double lo, hi;
    std::size_t points;
    std::vector<double> grid() const;
};

struct SpectrumPair {
    std::vector<double> grid;
    std::vector<double> forward;  // P_{source->target, omega}
    std::vector<double> backward; // P_{target->source, omega}
};

SpectrumPair spectrum_run(const ResonatorNetwork& net, const ModulationProtocol& mod, const GridSpec& grid,
                          const RunSettings& settings = {});

struct MethodResult {
    Method method;
    double P_fwd{0.0};
    double P_bwd{0.0};
    std::string status{"ok"};
};

struct CompareReport {
    std::vector<MethodResult> results; // qme, qle, oracle
    double dev_qme_qle{0.0};           // max relative deviation over both directions
    double dev_qme_oracle{0.0};
    double truncation_change{0.0};     // qME relative change from n_max to n_max + 2
    std::vector<std::string> diagnostics;
    bool pass{false};
};

inline constexpr double kCompareQleTol = 5e-3;
inline constexpr double kCompareOracleTol = 1e-4;
inline constexpr double kTruncationWarn = 1e-3;

/// qME, qLE and the time-domain oracle at one point. PASS iff qME-vs-qLE is
/// within 0.5% and qME-vs-oracle within 1e-4. settings.n_max applies to both
/// Fourier solvers when set.
CompareReport compare_methods(const ResonatorNetwork& net, const ModulationProtocol& mod,
                              const RunSettings& settings = {});

/// Parameters of the standard four-resonator chain experiment.
struct Chain4Setup {
    double omega0{1.69e14};
    double kappa_ratio{0.013}; // kappa / omega0
    double g_ratio{0.011};     // g / kappa
    double Omega_ratio{0.05};  // Omega / omega0
    double T_hot{300.0};
};

std::pair<ResonatorNetwork, ModulationProtocol> chain4_from_setup(const Chain4Setup& s, double beta_ratio,
                                                                  double theta);

} // namespace synheat
