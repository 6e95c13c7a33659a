// Shared fixtures and independent reference calculations for the unit tests.
#pragma once

#include "synheat/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <utility>

namespace testing {

using synheat::cplx;

inline constexpr double omega0 = 1.69e14;
inline constexpr double kappa = 0.013 * omega0;
inline constexpr double g = 0.011 * kappa;
inline constexpr double Omega = 0.05 * omega0;
inline constexpr double T_hot = 300.0;

// Frozen values from an independent Python evaluation (numpy/scipy).
inline constexpr double n_300K = 0.013715221568093535;
inline constexpr double P14_static = 5.943074812815425e-22;
inline constexpr double P_em_static = 6.497038533448333e-14;

inline std::pair<synheat::ResonatorNetwork, synheat::ModulationProtocol> chain(double beta_ratio, double theta) {
    return synheat::build_chain4(omega0, g, kappa, beta_ratio * omega0, Omega, theta);
}

inline double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Stationary <a_k^+ a_l> of the unmodulated network from the Lyapunov equation
// X* C + C X^T + D = 0, X = -(i H + kappa), D = diag(2 kappa n), solved through
// its Kronecker form. Shares nothing with the moment-index assembly.
inline Eigen::MatrixXcd lyapunov_moments(const synheat::ResonatorNetwork& net, const Eigen::VectorXd& occ) {
    const auto N = static_cast<Eigen::Index>(net.size());
    Eigen::MatrixXcd H = net.g;
    H.diagonal() += net.omega.cast<cplx>();
    Eigen::MatrixXcd X = -cplx{0.0, 1.0} * H;
    X.diagonal() -= net.kappa.cast<cplx>();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);
    Eigen::MatrixXcd K(N * N, N * N);
    const Eigen::MatrixXcd Xc = X.conjugate();
    for (Eigen::Index a = 0; a < N; ++a) {
        for (Eigen::Index b = 0; b < N; ++b) {
            // column-major vec: vec(A C) = (I kron A) vec C, vec(C B^T) = (B kron I) vec C
            K.block(a * N, b * N, N, N) = I(a, b) * Xc + X(a, b) * I;
        }
    }
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(N * N);
    for (Eigen::Index k = 0; k < N; ++k) {
        d[k * N + k] = -2.0 * net.kappa[k] * occ[k];
    }
    const Eigen::VectorXcd c = K.fullPivLu().solve(d);
    return Eigen::Map<const Eigen::MatrixXcd>(c.data(), N, N);
}

// Random Hermitian network with 1 <= N <= max_N, well inside the white-noise regime.
struct RandomNetwork {
    synheat::ResonatorNetwork net;
    synheat::ModulationProtocol mod;
};

inline RandomNetwork random_network(std::mt19937& rng, int max_N) {
    std::uniform_int_distribution<int> size(1, max_N);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int N = size(rng);
    const double w = 1e14;
    RandomNetwork r;
    auto& net = r.net;
    net.omega.resize(N);
    net.kappa.resize(N);
    net.T.resize(N);
    net.g = Eigen::MatrixXcd::Zero(N, N);
    net.hermitian = true;
    for (int k = 0; k < N; ++k) {
        net.omega[k] = w * (1.0 + 0.02 * (u(rng) - 0.5));
        net.kappa[k] = w * (0.005 + 0.015 * u(rng));
        net.T[k] = 200.0 + 300.0 * u(rng);
    }
    for (int k = 0; k < N; ++k) {
        for (int l = k + 1; l < N; ++l) {
            const cplx c{0.004 * w * (u(rng) - 0.5), 0.004 * w * (u(rng) - 0.5)};
            net.g(k, l) = c;
            net.g(l, k) = std::conj(c);
        }
    }
    auto& mod = r.mod;
    mod.beta = w * 0.02 * u(rng);
    mod.Omega = w * (0.01 + 0.04 * u(rng));
    mod.theta.resize(N);
    mod.mask.resize(N);
    for (int k = 0; k < N; ++k) {
        mod.theta[k] = 2.0 * 3.141592653589793 * u(rng);
        mod.mask[k] = u(rng) < 0.7 ? 1 : 0;
    }
    return r;
}

} // namespace testing
