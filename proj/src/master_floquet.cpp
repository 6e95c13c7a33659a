#include "synheat/master_floquet.hpp"

#include "synheat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace synheat {

namespace {

constexpr cplx I{0.0, 1.0};

Eigen::Index at(std::size_t i) { return static_cast<Eigen::Index>(i); }

} // namespace

MomentIndexMap::MomentIndexMap(std::size_t N) : N_(N), table_(N * N), pairs_(N * N) {
    std::size_t next = 0;
    auto put = [&](std::size_t k, std::size_t l) {
        table_[k * N_ + l] = next;
        pairs_[next] = {k, l};
        ++next;
    };
    for (std::size_t k = 0; k < N; ++k) {
        put(k, k);
    }
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = k + 1; l < N; ++l) {
            put(k, l);
            put(l, k);
        }
    }
}

Eigen::MatrixXcd assemble_Mn(const ResonatorNetwork& net, int n, double Omega) {
    const std::size_t N = net.size();
    const MomentIndexMap idx(N);
    const auto dim = at(idx.size());
    const cplx shift = -I * static_cast<double>(n) * Omega;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);

    for (std::size_t k = 0; k < N; ++k) {
        // d<a_k^+ a_k>/dt = -i sum_j (g_kj <a_k^+ a_j> - g_jk <a_j^+ a_k>) - 2 kappa_k <a_k^+ a_k> + 2 kappa_k n_k
        const auto r = at(idx.index(k, k));
        M(r, r) = shift + 2.0 * net.kappa[at(k)];
        for (std::size_t j = 0; j < N; ++j) {
            if (j == k) {
                continue;
            }
            M(r, at(idx.index(k, j))) += I * net.g(at(k), at(j));
            M(r, at(idx.index(j, k))) -= I * net.g(at(j), at(k));
        }
    }
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = 0; l < N; ++l) {
            if (k == l) {
                continue;
            }
            // d<a_k^+ a_l>/dt = Omega_kl <a_k^+ a_l>
            //   - i sum_{j != k,l} (g_lj <a_k^+ a_j> - g_jk <a_j^+ a_l>)
            //   - i g_lk (<a_k^+ a_k> - <a_l^+ a_l>)
            const auto r = at(idx.index(k, l));
            const cplx Omega_kl = I * (net.omega[at(k)] - net.omega[at(l)]) - net.kappa[at(k)] - net.kappa[at(l)];
            M(r, r) = shift - Omega_kl;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == k || j == l) {
                    continue;
                }
                M(r, at(idx.index(k, j))) += I * net.g(at(l), at(j));
                M(r, at(idx.index(j, l))) -= I * net.g(at(j), at(k));
            }
            M(r, at(idx.index(k, k))) += I * net.g(at(l), at(k));
            M(r, at(idx.index(l, l))) -= I * net.g(at(l), at(k));
        }
    }
    return M;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> assemble_Gpm(const ModulationProtocol& mod) {
    const std::size_t N = mod.mask.size();
    const MomentIndexMap idx(N);
    Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(at(idx.size()));
    Eigen::VectorXcd minus = Eigen::VectorXcd::Zero(at(idx.size()));
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = 0; l < N; ++l) {
            if (k != l) {
                const cplx eta = mod.eta(k, l);
                plus[at(idx.index(k, l))] = 0.5 * I * mod.beta * eta;
                minus[at(idx.index(k, l))] = 0.5 * I * mod.beta * std::conj(eta);
            }
        }
    }
    return {plus.asDiagonal(), minus.asDiagonal()};
}

BlockTridiagonal assemble_fourier_system(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                         TruncationOrder n_max) {
    const std::size_t D = net.size() * net.size();
    BlockTridiagonal sys(static_cast<std::size_t>(n_max.blocks()), D);
    const auto [g_plus, g_minus] = assemble_Gpm(mod);
    for (int b = 0; b < n_max.blocks(); ++b) {
        const auto bi = static_cast<std::size_t>(b);
        sys.diag(bi) = assemble_Mn(net, n_max.sideband_of(b), mod.Omega);
        // Row n couples to psi_{n+1} (block above) through -G+ and to psi_{n-1} through -G-.
        if (b > 0) {
            sys.lower(bi) = -g_plus;
        }
        if (b + 1 < n_max.blocks()) {
            sys.upper(bi) = -g_minus;
        }
    }
    return sys;
}

Eigen::VectorXcd source_vector(const ResonatorNetwork& net, const Eigen::VectorXd& occ) {
    const auto N = static_cast<Eigen::Index>(net.size());
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(N * N);
    // Diagonal moments occupy the first N slots of every block.
    s.head(N) = (2.0 * net.kappa.cwiseProduct(occ)).cast<cplx>();
    return s;
}

FourierSolution solve_fourier(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n_max,
                              const Eigen::VectorXd& occ, SolvePath path) {
    if (n_max.n_max < 0) {
        throw std::invalid_argument("truncation order must be nonnegative");
    }
    require_valid(net, mod);
    const auto D = static_cast<Eigen::Index>(net.size() * net.size());
    const BlockTridiagonal sys = assemble_fourier_system(net, mod, n_max);

    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(sys.dim(), 1);
    rhs.middleRows(n_max.block_of(0) * D, D) = source_vector(net, occ);

    const Eigen::MatrixXcd x = path == SolvePath::dense ? solve_dense(sys.to_dense(), rhs) : sys.solve(rhs);
    if (!x.allFinite()) {
        throw NonFiniteError("solve_fourier: non-finite Fourier coefficients");
    }
    FourierSolution sol{n_max, mod.Omega, Eigen::MatrixXcd(n_max.blocks(), D)};
    for (int b = 0; b < n_max.blocks(); ++b) {
        sol.coeffs.row(b) = x.col(0).segment(b * D, D).transpose();
    }
    return sol;
}

FourierSolution solve_fourier(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n_max,
                              std::size_t source, const PhysicalConstants& consts, SolvePath path) {
    if (source >= net.size()) {
        throw std::out_of_range("source bath index out of range");
    }
    Eigen::VectorXd occ = Eigen::VectorXd::Zero(at(net.size()));
    occ[at(source)] = occupation(net.T[at(source)], net.omega[at(source)], consts);
    return solve_fourier(net, mod, n_max, occ, path);
}

PowerMatrix power_matrix(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n_max,
                         const PhysicalConstants& consts, SolvePath path) {
    const auto N = at(net.size());
    PowerMatrix pm{Eigen::MatrixXd::Zero(N, N), Eigen::VectorXd::Zero(N)};
    for (Eigen::Index k = 0; k < N; ++k) {
        const double n_k = occupation(net.T[k], net.omega[k], consts);
        if (n_k == 0.0) {
            continue;
        }
        const FourierSolution sol = solve_fourier(net, mod, n_max, static_cast<std::size_t>(k), consts, path);
        const double prefactor = consts.hbar * net.omega[k];
        for (Eigen::Index l = 0; l < N; ++l) {
            const double occ_l = sol.coeff(0, static_cast<std::size_t>(l)).real();
            if (l == k) {
                pm.P_em[k] = prefactor * 2.0 * net.kappa[k] * (n_k - occ_l);
            } else {
                pm.P(k, l) = prefactor * 2.0 * net.kappa[l] * occ_l;
            }
        }
    }
    return pm;
}

Eigen::VectorXcd periodic_expectations(const FourierSolution& sol, double t) {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(sol.coeffs.cols());
    for (int n = -sol.n_max.n_max; n <= sol.n_max.n_max; ++n) {
        y += std::polar(1.0, -static_cast<double>(n) * sol.Omega * t) * sol.block(n);
    }
    return y;
}

ConvergedPowers power_matrix_converged(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                       const PhysicalConstants& consts, int n_start, double rel_change,
                                       int n_limit) {
    int n = std::max(1, n_start);
    PowerMatrix prev = power_matrix(net, mod, TruncationOrder(n), consts);
    while (2 * n <= n_limit) {
        n *= 2;
        PowerMatrix next = power_matrix(net, mod, TruncationOrder(n), consts);
        double change = 0.0;
        for (Eigen::Index i = 0; i < next.P.size(); ++i) {
            const double ref = std::abs(next.P.data()[i]);
            const double diff = std::abs(next.P.data()[i] - prev.P.data()[i]);
            if (diff > 0.0) {
                change = std::max(change, ref > 0.0 ? diff / ref : std::numeric_limits<double>::infinity());
            }
        }
        if (change < rel_change) {
            return {std::move(next), n, change};
        }
        prev = std::move(next);
    }
    throw ConvergenceError("power_matrix_converged: truncation order limit reached");
}

} // namespace synheat
