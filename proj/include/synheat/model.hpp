// model.hpp: resonator network, modulation protocol and shared physical helpers
//
// All solvers consume these value types. Frequencies are angular [rad/s],
// temperatures in K, powers in W.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace synheat {

using cplx = std::complex<double>;

struct PhysicalConstants {
    double hbar{1.054571817e-34}; // J s
    double kB{1.380649e-23};      // J/K
};

/// N linearly coupled resonators, each attached to its own thermal bath.
/// g(i, j) multiplies a_i^dagger a_j in the system Hamiltonian.
struct ResonatorNetwork {
    Eigen::VectorXd omega; // resonance frequencies
    Eigen::MatrixXcd g;    // couplings, zero diagonal
    Eigen::VectorXd kappa; // damping rates, strictly positive
    Eigen::VectorXd T;     // bath temperatures
    bool hermitian{false}; // when set, validate() enforces g = g^dagger

    std::size_t size() const { return static_cast<std::size_t>(omega.size()); }
};

/// omega_k(t) = omega_k + mask_k * beta * cos(Omega t + theta_k)
struct ModulationProtocol {
    double beta{0.0};
    double Omega{1.0};
    Eigen::VectorXd theta;
    std::vector<int> mask;

    /// m_k e^{i theta_k}; only phase differences of these enter the physics.
    cplx phasor(std::size_t k) const;
    /// eta_kl = m_k e^{i theta_k} - m_l e^{i theta_l}
    cplx eta(std::size_t k, std::size_t l) const;
};

/// Number of retained Floquet sidebands on each side of the central one.
struct TruncationOrder {
    int n_max{0};

    constexpr explicit TruncationOrder(int n) : n_max(n) {}
    constexpr int blocks() const { return 2 * n_max + 1; }
    /// Storage position of sideband m; sidebands run from +n_max (0) down to -n_max.
    constexpr int block_of(int m) const { return n_max - m; }
    constexpr int sideband_of(int block) const { return n_max - block; }
};

/// Cycle-averaged power flow. P(k, l) is the power delivered from bath k into
/// bath l when only bath k is hot; P_em(k) is what bath k injects.
struct PowerMatrix {
    Eigen::MatrixXd P;
    Eigen::VectorXd P_em;
};

/// Bose-Einstein occupation 1/(exp(hbar omega / kB T) - 1); exactly 0 at T = 0.
/// Throws std::domain_error for omega <= 0 or T < 0.
double occupation(double T, double omega, const PhysicalConstants& consts = {});

/// Occupations of every bath, evaluated once at the unmodulated frequencies.
Eigen::VectorXd occupations(const ResonatorNetwork& net, const PhysicalConstants& consts = {});

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity;
    std::string message;
};

/// Checks every invariant of the network/modulation pair and the white-noise
/// applicability thresholds. Empty result means "valid, no warnings".
std::vector<Diagnostic> validate(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                 const PhysicalConstants& consts = {});

bool has_errors(const std::vector<Diagnostic>& diags);

/// Throws ValidationError listing every error-severity diagnostic.
void require_valid(const ResonatorNetwork& net, const ModulationProtocol& mod,
                   const PhysicalConstants& consts = {});

/// Four identical resonators in a tight-binding chain; the middle pair is
/// modulated with relative phase theta. All bath temperatures start at 0 K.
std::pair<ResonatorNetwork, ModulationProtocol> build_chain4(double omega0, double g, double kappa,
                                                             double beta, double Omega, double theta);

/// Copy of net with T_k = T_hot for k == hot and 0 K elsewhere.
ResonatorNetwork with_single_hot_bath(const ResonatorNetwork& net, std::size_t hot, double T_hot);

} // namespace synheat
