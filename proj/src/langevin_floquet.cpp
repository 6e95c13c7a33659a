#include "synheat/langevin_floquet.hpp"

#include "quadrature.hpp"
#include "synheat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace synheat {

namespace {

constexpr cplx I{0.0, 1.0};

Eigen::VectorXcd q_diagonal(const ModulationProtocol& mod, int sign) {
    const auto N = static_cast<Eigen::Index>(mod.mask.size());
    Eigen::VectorXcd q(N);
    for (Eigen::Index k = 0; k < N; ++k) {
        const cplx p = mod.phasor(static_cast<std::size_t>(k));
        q[k] = sign > 0 ? p : std::conj(p);
    }
    return q;
}

void check_pair(const ResonatorNetwork& net, std::size_t source, std::size_t observer) {
    if (source >= net.size() || observer >= net.size()) {
        throw std::out_of_range("resonator index out of range");
    }
    if (source == observer) {
        throw std::invalid_argument("source and observer must differ");
    }
}

// Reference scale used to express frequencies as O(1) numbers for quadrature.
struct FrequencyFrame {
    double center;
    double scale;
    double width; // tan-map width in units of scale
    std::vector<double> peaks;
};

FrequencyFrame frame_for(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n) {
    FrequencyFrame fr;
    fr.center = net.omega.mean();
    fr.scale = net.kappa.minCoeff();
    fr.peaks = spectral_peaks(net, mod, n);
    double span = 0.0;
    for (double p : fr.peaks) {
        span = std::max(span, std::abs(p - fr.center));
    }
    fr.width = span / fr.scale + 10.0 * net.kappa.maxCoeff() / fr.scale;
    return fr;
}

std::vector<double> breakpoints_in_frame(const FrequencyFrame& fr) {
    std::vector<double> pts;
    for (std::size_t i = 0; i < fr.peaks.size(); ++i) {
        const double u = (fr.peaks[i] - fr.center) / fr.scale;
        pts.push_back(u);
        if (i + 1 < fr.peaks.size()) {
            pts.push_back(0.5 * (u + (fr.peaks[i + 1] - fr.center) / fr.scale));
        }
    }
    return pts;
}

} // namespace

double FloquetSpectrum::total(std::size_t i, std::size_t l) const {
    double s = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        s += at(i, l, k);
    }
    return s;
}

Eigen::MatrixXcd assemble_A(const ResonatorNetwork& net, double omega) {
    const auto N = static_cast<Eigen::Index>(net.size());
    Eigen::MatrixXcd A = I * net.g;
    for (Eigen::Index k = 0; k < N; ++k) {
        A(k, k) = I * (net.omega[k] - omega) + net.kappa[k];
    }
    return A;
}

BlockTridiagonal assemble_sideband_operator(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                            double omega, TruncationOrder n) {
    const std::size_t N = net.size();
    BlockTridiagonal op(static_cast<std::size_t>(n.blocks()), N);
    const Eigen::MatrixXcd q_plus = (0.5 * I * mod.beta * q_diagonal(mod, +1)).asDiagonal();
    const Eigen::MatrixXcd q_minus = (0.5 * I * mod.beta * q_diagonal(mod, -1)).asDiagonal();
    for (int b = 0; b < n.blocks(); ++b) {
        const auto bi = static_cast<std::size_t>(b);
        op.diag(bi) = assemble_A(net, omega + n.sideband_of(b) * mod.Omega);
        if (b > 0) {
            op.lower(bi) = q_plus; // couples to sideband m + 1
        }
        if (b + 1 < n.blocks()) {
            op.upper(bi) = q_minus; // couples to sideband m - 1
        }
    }
    return op;
}

SidebandBlockSystem assemble_sideband_system(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                             double omega, TruncationOrder n) {
    const auto N = static_cast<Eigen::Index>(net.size());
    const Eigen::Index dim = N * n.blocks();
    const BlockTridiagonal op = assemble_sideband_operator(net, mod, omega, n);

    SidebandBlockSystem sys{n, omega, Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim)};
    for (int b = 0; b < n.blocks(); ++b) {
        const auto bi = static_cast<std::size_t>(b);
        const Eigen::Index r = b * N;
        const Eigen::MatrixXcd M = checked_inverse(op.diag(bi));
        sys.Mdiag.block(r, r, N, N) = M;
        sys.L.block(r, r, N, N).setIdentity();
        if (b > 0) {
            sys.L.block(r, r - N, N, N) = M * op.lower(bi);
        }
        if (b + 1 < n.blocks()) {
            sys.L.block(r, r + N, N, N) = M * op.upper(bi);
        }
    }
    return sys;
}

Eigen::MatrixXd spectral_kernel(const ResonatorNetwork& net, const ModulationProtocol& mod, double omega,
                                TruncationOrder n, SolvePath path) {
    const std::size_t N = net.size();
    const auto Ni = static_cast<Eigen::Index>(N);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(Ni, Ni);

    if (path == SolvePath::dense) {
        const SidebandBlockSystem sys = assemble_sideband_system(net, mod, omega, n);
        const Eigen::MatrixXcd T = solve_dense(sys.L, sys.Mdiag);
        for (std::size_t l = 0; l < N; ++l) {
            const Eigen::Index row = sideband_index(n, N, 0, l);
            for (int b = 0; b < n.blocks(); ++b) {
                for (Eigen::Index k = 0; k < Ni; ++k) {
                    K(static_cast<Eigen::Index>(l), k) += std::norm(T(row, b * Ni + k));
                }
            }
        }
        return K;
    }

    // Rows of op^{-1} through the central block: solve op^T X = E_central.
    const BlockTridiagonal opT = assemble_sideband_operator(net, mod, omega, n).transpose();
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(opT.dim(), Ni);
    for (std::size_t l = 0; l < N; ++l) {
        rhs(sideband_index(n, N, 0, l), static_cast<Eigen::Index>(l)) = 1.0;
    }
    const Eigen::MatrixXcd X = opT.solve(rhs);
    for (int b = 0; b < n.blocks(); ++b) {
        K += X.middleRows(b * Ni, Ni).cwiseAbs2().transpose();
    }
    return K;
}

Eigen::MatrixXd spectral_correlations(const ResonatorNetwork& net, const ModulationProtocol& mod, double omega,
                                      TruncationOrder n, const PhysicalConstants& consts, SolvePath path) {
    const Eigen::VectorXd occ = occupations(net, consts);
    const Eigen::VectorXd weight = 2.0 * net.kappa.cwiseProduct(occ);
    Eigen::MatrixXd C = spectral_kernel(net, mod, omega, n, path) * weight.asDiagonal();
    if (!C.allFinite()) {
        throw NonFiniteError("spectral_correlations: non-finite spectrum");
    }
    return C;
}

FloquetSpectrum floquet_spectrum(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                 const std::vector<double>& grid, TruncationOrder n,
                                 const PhysicalConstants& consts) {
    FloquetSpectrum spec;
    spec.grid = grid;
    std::sort(spec.grid.begin(), spec.grid.end());
    spec.N = net.size();
    spec.S.resize(spec.grid.size() * spec.N * spec.N);
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const Eigen::MatrixXd C = spectral_correlations(net, mod, spec.grid[i], n, consts);
        for (std::size_t l = 0; l < spec.N; ++l) {
            for (std::size_t k = 0; k < spec.N; ++k) {
                spec.S[(i * spec.N + l) * spec.N + k] =
                    C(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k));
            }
        }
    }
    return spec;
}

std::vector<double> heat_flux_spectrum(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                       std::size_t source, std::size_t observer,
                                       const std::vector<double>& grid, TruncationOrder n,
                                       const PhysicalConstants& consts) {
    check_pair(net, source, observer);
    const auto k = static_cast<Eigen::Index>(source);
    const auto l = static_cast<Eigen::Index>(observer);
    const double n_k = occupation(net.T[k], net.omega[k], consts);
    const double prefactor = consts.hbar * net.omega[k] * 2.0 * net.kappa[l] * 2.0 * net.kappa[k] * n_k;
    std::vector<double> out(grid.size(), 0.0);
    if (n_k == 0.0) {
        return out;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = prefactor * spectral_kernel(net, mod, grid[i], n)(l, k);
    }
    return out;
}

std::vector<double> spectral_peaks(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n) {
    std::vector<double> peaks;
    const bool modulated = mod.beta > 0.0;
    const int reach = modulated ? n.n_max : 0;
    for (Eigen::Index j = 0; j < net.omega.size(); ++j) {
        for (int m = -reach; m <= reach; ++m) {
            peaks.push_back(net.omega[j] + m * mod.Omega);
        }
    }
    std::sort(peaks.begin(), peaks.end());
    const double merge = 0.25 * net.kappa.minCoeff();
    peaks.erase(std::unique(peaks.begin(), peaks.end(), [merge](double a, double b) { return b - a < merge; }),
                peaks.end());
    return peaks;
}

double integrate_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t source,
                       std::size_t observer, TruncationOrder n, double quad_tol, const PhysicalConstants& consts) {
    check_pair(net, source, observer);
    if (!(quad_tol > 0.0)) {
        throw std::invalid_argument("quad_tol must be positive");
    }
    const auto k = static_cast<Eigen::Index>(source);
    const auto l = static_cast<Eigen::Index>(observer);
    const double n_k = occupation(net.T[k], net.omega[k], consts);
    if (n_k == 0.0) {
        return 0.0;
    }
    const FrequencyFrame fr = frame_for(net, mod, n);
    auto f = [&](double u) { return spectral_kernel(net, mod, fr.center + fr.scale * u, n)(l, k); };
    const auto res = detail::integrate_real_line(f, 0.0, fr.width, breakpoints_in_frame(fr), quad_tol, 0.0);
    // integral over omega = scale * integral over u
    const double occ_l = 2.0 * net.kappa[k] * n_k * fr.scale * res.value / (2.0 * std::numbers::pi);
    return consts.hbar * net.omega[k] * 2.0 * net.kappa[l] * occ_l;
}

double emitted_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t source,
                     TruncationOrder n, double quad_tol, const PhysicalConstants& consts) {
    if (source >= net.size()) {
        throw std::out_of_range("resonator index out of range");
    }
    if (!(quad_tol > 0.0)) {
        throw std::invalid_argument("quad_tol must be positive");
    }
    const auto k = static_cast<Eigen::Index>(source);
    const double n_k = occupation(net.T[k], net.omega[k], consts);
    if (n_k == 0.0) {
        return 0.0;
    }
    const FrequencyFrame fr = frame_for(net, mod, n);
    const double kap = net.kappa[k];
    auto f = [&](double u) {
        const double w = fr.center + fr.scale * u;
        const double detuning = net.omega[k] - w;
        const double free = 1.0 / (detuning * detuning + kap * kap);
        return (free - spectral_kernel(net, mod, w, n)(k, k)) * fr.scale * fr.scale;
    };
    // The free Lorentzian alone integrates to pi / (kappa_k scale) in u; the
    // absolute floor is a tiny fraction of that reference.
    const double reference = std::numbers::pi * fr.scale / kap;
    const auto res = detail::integrate_real_line(f, 0.0, fr.width, breakpoints_in_frame(fr), quad_tol,
                                                 1e-12 * reference);
    const double depletion = 2.0 * kap * n_k * res.value / (fr.scale * 2.0 * std::numbers::pi);
    return consts.hbar * net.omega[k] * 2.0 * kap * depletion;
}

PowerMatrix langevin_power_matrix(const ResonatorNetwork& net, const ModulationProtocol& mod, TruncationOrder n,
                                  double quad_tol, const PhysicalConstants& consts) {
    const auto N = static_cast<Eigen::Index>(net.size());
    PowerMatrix pm{Eigen::MatrixXd::Zero(N, N), Eigen::VectorXd::Zero(N)};
    for (Eigen::Index k = 0; k < N; ++k) {
        for (Eigen::Index l = 0; l < N; ++l) {
            if (k != l) {
                pm.P(k, l) = integrate_power(net, mod, static_cast<std::size_t>(k), static_cast<std::size_t>(l), n,
                                             quad_tol, consts);
            }
        }
        pm.P_em[k] = emitted_power(net, mod, static_cast<std::size_t>(k), n, quad_tol, consts);
    }
    return pm;
}

} // namespace synheat
