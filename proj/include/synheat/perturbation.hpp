// perturbation.hpp: second-order elimination of the first sidebands and weak-coupling closed forms
//
// Keeping only Fourier blocks n = 0, +-1 and eliminating +-1 gives an
// effective zeroth-block matrix
//   Neff = M_0 + (beta^2 / 4) (Gt M_{+1}^{-1} Gt* + Gt* M_{-1}^{-1} Gt),
// with G+- = (i beta / 2) Gt, Gt*. For the symmetric four-resonator chain a
// Taylor expansion in g / kappa yields closed forms for P14 - P41.

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "synheat/model.hpp"

namespace synheat {

enum class PerturbationVariant {
    matrix_inverse, // psi_0 = Neff^{-1} kappa
    neumann,        // first-order expansion of Neff^{-1} around M_0^{-1}
};

/// Effective second-order matrix. Throws SingularMatrixError if M_{+-1} is singular.
Eigen::MatrixXcd assemble_Npert(const ResonatorNetwork& net, const ModulationProtocol& mod);

/// Zeroth-block moments driven by the given bath occupations.
Eigen::VectorXcd second_order_moments(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                      PerturbationVariant variant, const Eigen::VectorXd& occ);

struct PowerPair {
    double forward{0.0};  // P_{a->b}, bath a hot
    double backward{0.0}; // P_{b->a}, bath b hot
};

/// Forward/backward powers between resonators a and b from the second-order
/// moments, each direction with its hot bath at T_hot and all others at 0 K.
PowerPair power_second_order(const ResonatorNetwork& net, const ModulationProtocol& mod, PerturbationVariant variant,
                             std::size_t a, std::size_t b, double T_hot, const PhysicalConstants& consts = {});

/// Delta N14 of the four-resonator chain for arbitrary modulation phasors:
/// eta is the 4x4 matrix eta(k, l) = eta_kl (0-based). Weak-coupling result
/// valid to order beta^2 g^6.
double delta_N14_general(double g, double kappa, double beta, double Omega, const Eigen::Matrix4cd& eta);

/// Delta N14 for the chain with only resonator 3 carrying phase theta.
double delta_N14_closed_form(double g, double kappa, double beta, double Omega, double theta);

/// P14 - P41 in the weak-coupling limit, A = 2 kappa - i Omega:
/// (P14 - P41) / (hbar omega0 n g) = beta^2 (g/kappa)^5
///   [ 7/8 Im(A^2)/|A|^4 + kappa Im(A^3)/|A|^6 - kappa^3 Im(A^5)/|A|^10 ] sin(theta).
double delta_power_weak_coupling(double omega0, double n_occ, double g, double kappa, double beta, double Omega,
                                 double theta, const PhysicalConstants& consts = {});

/// The same difference assembled as 4 hbar omega0 n kappa^2 Delta N14.
double delta_power_from_delta_N14(double omega0, double n_occ, double kappa, double delta_N14,
                                  const PhysicalConstants& consts = {});

/// Parameters of a symmetric four-resonator chain recovered from a network.
struct Chain4Parameters {
    double omega0, g, kappa, beta, Omega, theta;
};

/// Throws std::invalid_argument unless (net, mod) is a uniform chain of four
/// with only resonators 2 and 3 modulated.
Chain4Parameters chain4_parameters(const ResonatorNetwork& net, const ModulationProtocol& mod);

struct PerturbationResult {
    double P14{0.0};
    double P41{0.0};
    double deltaP_matrixform{0.0};  // from Neff^{-1}
    double deltaP_expansion{0.0};   // from the first-order expansion
    double deltaP_closedform{0.0};  // weak-coupling closed form
    double deltaP_closedform_via_N14{0.0}; // 4 hbar w0 n kappa^2 Delta N14
};

/// Every perturbative estimate for the chain with hot baths at T_hot.
PerturbationResult perturbation_summary(const ResonatorNetwork& net, const ModulationProtocol& mod, double T_hot,
                                        const PhysicalConstants& consts = {});

} // namespace synheat
