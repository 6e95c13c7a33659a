// langevin_floquet.hpp: frequency-domain Floquet solver for the quantum Langevin equations
//
// The modulated Langevin equations couple a(omega) to the sidebands
// a(omega +- Omega). Truncating at |m| <= n_max gives a block-tridiagonal
// system whose central block row yields the stationary spectra
// <a_l^dagger a_l>_omega, split by source bath. Powers follow by integrating
// these spectra over the whole real frequency axis.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "synheat/linalg.hpp"
#include "synheat/model.hpp"

namespace synheat {

/// Literal sideband system L psi = Mdiag F: L has identity diagonal blocks and
/// (i beta / 2) M_m Q_-+ off-diagonal blocks; Mdiag = blockdiag(A(omega + m Omega)^{-1}).
/// Blocks are ordered from sideband +n_max (top) down to -n_max.
struct SidebandBlockSystem {
    TruncationOrder n_max;
    double omega;
    Eigen::MatrixXcd L;
    Eigen::MatrixXcd Mdiag;
};

/// Stationary spectra on a frequency grid. at(i, l, k) is the contribution of
/// bath k to <a_l^dagger a_l>_omega at grid point i (normalized so that
/// integrating with d omega / 2 pi gives the occupation).
struct FloquetSpectrum {
    std::vector<double> grid;
    std::size_t N{0};
    std::vector<double> S;

    double at(std::size_t i, std::size_t l, std::size_t k) const { return S[(i * N + l) * N + k]; }
    double total(std::size_t i, std::size_t l) const;
};

/// A[k][k] = i (omega_k - omega) + kappa_k, A[k][l] = i g_kl.
Eigen::MatrixXcd assemble_A(const ResonatorNetwork& net, double omega);

/// Flattened row of resonator l (0-based) in sideband m.
inline Eigen::Index sideband_index(TruncationOrder n, std::size_t N, int m, std::size_t l) {
    return static_cast<Eigen::Index>(n.block_of(m)) * static_cast<Eigen::Index>(N) + static_cast<Eigen::Index>(l);
}

/// Throws SingularMatrixError if some A(omega + m Omega) is numerically singular.
SidebandBlockSystem assemble_sideband_system(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                             double omega, TruncationOrder n);

/// The same system before left-multiplication by Mdiag: diagonal blocks
/// A(omega + m Omega), off-diagonal blocks (i beta / 2) Q_+- . Since
/// L = Mdiag * op, the response L^{-1} Mdiag equals op^{-1}.
BlockTridiagonal assemble_sideband_operator(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                            double omega, TruncationOrder n);

/// Response kernel K(l, k) = sum over sidebands of |(L^{-1} Mdiag)_{l, (m, k)}|^2
/// for observer l in the central block. The bath-k spectrum is 2 kappa_k n_k K(l, k).
Eigen::MatrixXd spectral_kernel(const ResonatorNetwork& net, const ModulationProtocol& mod, double omega,
                                TruncationOrder n, SolvePath path = SolvePath::block_thomas);

/// Per-bath spectral occupations C(l, k) = <a_l^dagger a_l>_omega due to bath k,
/// with n_k taken from the bath temperatures.
Eigen::MatrixXd spectral_correlations(const ResonatorNetwork& net, const ModulationProtocol& mod, double omega,
                                      TruncationOrder n, const PhysicalConstants& consts = {},
                                      SolvePath path = SolvePath::block_thomas);

FloquetSpectrum floquet_spectrum(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                 const std::vector<double>& grid, TruncationOrder n,
                                 const PhysicalConstants& consts = {});

/// Spectral power density P_{kl, omega} = hbar omega_k 2 kappa_l <a_l^dagger a_l>_omega
/// (bath k hot) on the grid; integrates to P_{k->l} with d omega / 2 pi.
std::vector<double> heat_flux_spectrum(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                       std::size_t source, std::size_t observer,
                                       const std::vector<double>& grid, TruncationOrder n,
                                       const PhysicalConstants& consts = {});

/// Peak locations omega_j + m Omega used to split the integration range.
std::vector<double> spectral_peaks(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n);

/// P_{k->l}: integral of the bath-k spectrum of resonator l over the whole
/// frequency axis, times hbar omega_k 2 kappa_l. Throws QuadratureError if the
/// estimated relative error exceeds quad_tol.
double integrate_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t source,
                       std::size_t observer, TruncationOrder n, double quad_tol = 1e-6,
                       const PhysicalConstants& consts = {});

/// P_k^em = hbar omega_k 2 kappa_k (n_k - integral of the bath-k spectrum of
/// resonator k). The integrand is formed as (free Lorentzian - spectrum), whose
/// Lorentzian part integrates to n_k exactly, so no cancellation of two
/// separately integrated quantities occurs.
double emitted_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t source,
                     TruncationOrder n, double quad_tol = 1e-6, const PhysicalConstants& consts = {});

/// All pairwise powers and emitted powers from spectral integration. Rows of
/// cold baths (n_k = 0) are zero.
PowerMatrix langevin_power_matrix(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n,
                                  double quad_tol = 1e-6, const PhysicalConstants& consts = {});

} // namespace synheat
