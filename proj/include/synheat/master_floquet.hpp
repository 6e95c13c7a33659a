// master_floquet.hpp: Fourier-series solver for the second-moment equations of the master equation
//
// The N^2 normal-ordered moments <a_k^dagger a_l> obey closed linear
// equations. Under periodic modulation their Fourier components
// <O>(t) = sum_n exp(-i n Omega t) <O>_n satisfy a block-tridiagonal system
//   M_n psi_n - G+ psi_{n+1} - G- psi_{n-1} = kappa delta_{n0},
// whose zeroth block gives cycle-averaged occupations directly.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "synheat/linalg.hpp"
#include "synheat/model.hpp"

namespace synheat {

/// Flat ordering of the moments <a_k^dagger a_l>: the N diagonals first, then
/// (1,2), (2,1), (1,3), (3,1), ..., (1,N), (N,1), (2,3), (3,2), ..., (N-1,N), (N,N-1).
/// Indices are 0-based.
class MomentIndexMap {
public:
    explicit MomentIndexMap(std::size_t N);

    std::size_t N() const { return N_; }
    std::size_t size() const { return N_ * N_; }
    std::size_t index(std::size_t k, std::size_t l) const { return table_[k * N_ + l]; }
    std::pair<std::size_t, std::size_t> pair(std::size_t idx) const { return pairs_[idx]; }

private:
    std::size_t N_;
    std::vector<std::size_t> table_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Fourier coefficients of every moment. Row b of coeffs holds sideband
/// n = n_max - b (so n = +n_max is the first row), columns follow MomentIndexMap.
struct FourierSolution {
    TruncationOrder n_max;
    double Omega;
    Eigen::MatrixXcd coeffs;

    cplx coeff(int n, std::size_t idx) const {
        return coeffs(n_max.block_of(n), static_cast<Eigen::Index>(idx));
    }
    Eigen::VectorXcd block(int n) const { return coeffs.row(n_max.block_of(n)).transpose(); }
};

/// Left-hand-side matrix for Fourier component n, built directly from the
/// moment equations (the static couplings plus -i n Omega on the diagonal).
Eigen::MatrixXcd assemble_Mn(const ResonatorNetwork& net, int n, double Omega);

/// Sideband couplings G+ = (i beta / 2) diag(eta_kl) and G- with eta conjugated,
/// indexed by moment (eta_kl at idx(k, l), so -eta_kl at idx(l, k)).
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> assemble_Gpm(const ModulationProtocol& mod);

/// Full truncated Fourier system in block form (blocks from n = +n_max down).
BlockTridiagonal assemble_fourier_system(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                         TruncationOrder n_max);

/// Source block: 2 kappa_k n_k on diagonal moments.
Eigen::VectorXcd source_vector(const ResonatorNetwork& net, const Eigen::VectorXd& occ);

/// Solves for the Fourier coefficients driven by the given bath occupations.
FourierSolution solve_fourier(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n_max,
                              const Eigen::VectorXd& occ, SolvePath path = SolvePath::block_thomas);

/// Only bath `source` hot, at the occupation implied by its temperature.
FourierSolution solve_fourier(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n_max,
                              std::size_t source, const PhysicalConstants& consts = {},
                              SolvePath path = SolvePath::block_thomas);

/// P(k, l) = hbar omega_k 2 kappa_l Re <a_l^dagger a_l>_0 with bath k alone
/// hot; P_em(k) = hbar omega_k 2 kappa_k (n_k - Re <a_k^dagger a_k>_0).
PowerMatrix power_matrix(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n_max,
                         const PhysicalConstants& consts = {}, SolvePath path = SolvePath::block_thomas);

/// Moments at time t reconstructed from the Fourier series.
Eigen::VectorXcd periodic_expectations(const FourierSolution& sol, double t);

/// Result of the automatic truncation search.
struct ConvergedPowers {
    PowerMatrix powers;
    int n_max;
    double last_change;
};

/// Doubles n_max (starting at n_start) until every power changes by less than
/// rel_change. Throws ConvergenceError if n_limit is exceeded.
ConvergedPowers power_matrix_converged(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                       const PhysicalConstants& consts = {}, int n_start = 4,
                                       double rel_change = 1e-4, int n_limit = 256);

} // namespace synheat
