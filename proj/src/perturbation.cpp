#include "synheat/perturbation.hpp"

#include "synheat/linalg.hpp"
#include "synheat/master_floquet.hpp"

#include <cmath>
#include <stdexcept>

namespace synheat {

namespace {

// Gt = diag(eta_kl) over the moment index, without the (i beta / 2) factor.
Eigen::VectorXcd eta_diagonal(const ModulationProtocol& mod) {
    const std::size_t N = mod.mask.size();
    const MomentIndexMap idx(N);
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = 0; l < N; ++l) {
            if (k != l) {
                d[static_cast<Eigen::Index>(idx.index(k, l))] = mod.eta(k, l);
            }
        }
    }
    return d;
}

// beta^2/4 (Gt M_{+1}^{-1} Gt* + Gt* M_{-1}^{-1} Gt)
Eigen::MatrixXcd second_order_correction(const ResonatorNetwork& net, const ModulationProtocol& mod) {
    const Eigen::VectorXcd gt = eta_diagonal(mod);
    const Eigen::VectorXcd gt_conj = gt.conjugate();
    const Eigen::MatrixXcd Mp_inv = checked_inverse(assemble_Mn(net, +1, mod.Omega));
    const Eigen::MatrixXcd Mm_inv = checked_inverse(assemble_Mn(net, -1, mod.Omega));
    const Eigen::MatrixXcd up = gt.asDiagonal() * Mp_inv * gt_conj.asDiagonal();
    const Eigen::MatrixXcd down = gt_conj.asDiagonal() * Mm_inv * gt.asDiagonal();
    return 0.25 * mod.beta * mod.beta * (up + down);
}

// Im(A^p) / |A|^q with A = 2 kappa - i m Omega
double im_pow_over_abs(std::complex<double> A, int p, int q) {
    return std::imag(std::pow(A, p)) / std::pow(std::abs(A), q);
}

double im(std::complex<double> z) { return z.imag(); }

} // namespace

Eigen::MatrixXcd assemble_Npert(const ResonatorNetwork& net, const ModulationProtocol& mod) {
    return assemble_Mn(net, 0, mod.Omega) + second_order_correction(net, mod);
}

Eigen::VectorXcd second_order_moments(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                      PerturbationVariant variant, const Eigen::VectorXd& occ) {
    require_valid(net, mod);
    const Eigen::VectorXcd kappa_vec = source_vector(net, occ);
    if (variant == PerturbationVariant::matrix_inverse) {
        return solve_dense(assemble_Npert(net, mod), kappa_vec);
    }
    const Eigen::MatrixXcd M0 = assemble_Mn(net, 0, mod.Omega);
    const Eigen::VectorXcd psi0 = solve_dense(M0, kappa_vec);
    return psi0 - solve_dense(M0, second_order_correction(net, mod) * psi0);
}

PowerPair power_second_order(const ResonatorNetwork& net, const ModulationProtocol& mod, PerturbationVariant variant,
                             std::size_t a, std::size_t b, double T_hot, const PhysicalConstants& consts) {
    if (a >= net.size() || b >= net.size() || a == b) {
        throw std::invalid_argument("power_second_order: need two distinct resonators");
    }
    const auto ai = static_cast<Eigen::Index>(a);
    const auto bi = static_cast<Eigen::Index>(b);
    auto one_way = [&](Eigen::Index from, Eigen::Index to) {
        Eigen::VectorXd occ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.size()));
        occ[from] = occupation(T_hot, net.omega[from], consts);
        const Eigen::VectorXcd psi = second_order_moments(net, mod, variant, occ);
        return consts.hbar * net.omega[from] * 2.0 * net.kappa[to] * psi[to].real();
    };
    return {one_way(ai, bi), one_way(bi, ai)};
}

double delta_N14_general(double g, double kappa, double beta, double Omega, const Eigen::Matrix4cd& eta) {
    using C = std::complex<double>;
    const C A1{2.0 * kappa, -Omega};
    const double A0 = 2.0 * kappa;
    const double a1 = std::abs(A1);
    // eta(k, l) with 1-based names below
    auto e = [&](int k, int l) { return eta(k - 1, l - 1); };
    auto imx = [&](int a, int b, int c, int d) { return im(e(a, b) * std::conj(e(c, d))); };

    const double t1 = a1 * a1 * im(A1 * A1) / (A0 * A0 * A0) *
                      (4.0 * (imx(1, 3, 1, 2) + imx(3, 4, 2, 4)) + 3.0 * (imx(2, 3, 1, 3) + imx(2, 4, 2, 3)) +
                       imx(1, 4, 1, 3) + imx(2, 4, 1, 4));
    const double t2 = im(std::pow(A1, 3)) / (A0 * A0) *
                      (imx(1, 4, 1, 2) + 2.0 * imx(2, 4, 1, 3) + imx(3, 4, 1, 4) - 3.0 * imx(1, 2, 2, 3) -
                       3.0 * imx(2, 3, 3, 4));
    const double t3 = 2.0 * im(std::pow(A1, 4)) / (a1 * a1 * A0) * (imx(2, 4, 1, 2) + imx(3, 4, 1, 3));
    const double t4 = -2.0 * im(std::pow(A1, 5)) / std::pow(a1, 4) * imx(1, 2, 3, 4);

    const double prefactor = beta * beta * g * g / (8.0 * std::pow(a1, 6)) * std::pow(g / kappa, 4);
    return prefactor * (t1 + t2 + t3 + t4);
}

double delta_N14_closed_form(double g, double kappa, double beta, double Omega, double theta) {
    const std::complex<double> A1{2.0 * kappa, -Omega};
    const double A0 = 2.0 * kappa;
    const double bracket = 7.0 * im_pow_over_abs(A1, 2, 4) / std::pow(A0, 3) +
                           4.0 * im_pow_over_abs(A1, 3, 6) / std::pow(A0, 2) - im_pow_over_abs(A1, 5, 10);
    return beta * beta * std::pow(g, 6) / (4.0 * std::pow(kappa, 4)) * std::sin(theta) * bracket;
}

double delta_power_weak_coupling(double omega0, double n_occ, double g, double kappa, double beta, double Omega,
                                 double theta, const PhysicalConstants& consts) {
    const std::complex<double> A{2.0 * kappa, -Omega};
    const double bracket = 7.0 / 8.0 * im_pow_over_abs(A, 2, 4) + kappa * im_pow_over_abs(A, 3, 6) -
                           std::pow(kappa, 3) * im_pow_over_abs(A, 5, 10);
    const double scaled = beta * beta * std::pow(g / kappa, 5) * bracket * std::sin(theta);
    return consts.hbar * omega0 * n_occ * g * scaled;
}

double delta_power_from_delta_N14(double omega0, double n_occ, double kappa, double delta_N14,
                                  const PhysicalConstants& consts) {
    return 4.0 * consts.hbar * omega0 * n_occ * kappa * kappa * delta_N14;
}

Chain4Parameters chain4_parameters(const ResonatorNetwork& net, const ModulationProtocol& mod) {
    if (net.size() != 4 || mod.mask.size() != 4) {
        throw std::invalid_argument("chain4_parameters: network must have four resonators");
    }
    const double omega0 = net.omega[0];
    const double kappa = net.kappa[0];
    const cplx g = net.g(0, 1);
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
    bool ok = std::abs(g.imag()) <= 1e-12 * std::abs(g);
    for (Eigen::Index i = 0; i < 4; ++i) {
        ok = ok && close(net.omega[i], omega0) && close(net.kappa[i], kappa);
        for (Eigen::Index j = 0; j < 4; ++j) {
            const cplx expected = std::abs(i - j) == 1 ? g : cplx{0.0, 0.0};
            ok = ok && std::abs(net.g(i, j) - expected) <= 1e-12 * std::abs(g);
        }
    }
    ok = ok && mod.mask == std::vector<int>{0, 1, 1, 0};
    if (!ok) {
        throw std::invalid_argument("chain4_parameters: not a uniform nearest-neighbour chain of four "
                                    "with the middle pair modulated");
    }
    return {omega0, g.real(), kappa, mod.beta, mod.Omega, mod.theta[2] - mod.theta[1]};
}

PerturbationResult perturbation_summary(const ResonatorNetwork& net, const ModulationProtocol& mod, double T_hot,
                                        const PhysicalConstants& consts) {
    const Chain4Parameters c = chain4_parameters(net, mod);
    const double n = occupation(T_hot, c.omega0, consts);
    PerturbationResult r;
    const PowerPair pa1 = power_second_order(net, mod, PerturbationVariant::matrix_inverse, 0, 3, T_hot, consts);
    const PowerPair pa2 = power_second_order(net, mod, PerturbationVariant::neumann, 0, 3, T_hot, consts);
    r.P14 = pa1.forward;
    r.P41 = pa1.backward;
    r.deltaP_matrixform = pa1.forward - pa1.backward;
    r.deltaP_expansion = pa2.forward - pa2.backward;
    r.deltaP_closedform = delta_power_weak_coupling(c.omega0, n, c.g, c.kappa, c.beta, c.Omega, c.theta, consts);
    r.deltaP_closedform_via_N14 = delta_power_from_delta_N14(
        c.omega0, n, c.kappa, delta_N14_closed_form(c.g, c.kappa, c.beta, c.Omega, c.theta), consts);
    return r;
}

} // namespace synheat
