#include "synheat/model.hpp"

#include "synheat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace synheat {

cplx ModulationProtocol::phasor(std::size_t k) const {
    if (mask[k] == 0) {
        return {0.0, 0.0};
    }
    return static_cast<double>(mask[k]) * std::polar(1.0, theta[static_cast<Eigen::Index>(k)]);
}

cplx ModulationProtocol::eta(std::size_t k, std::size_t l) const {
    return phasor(k) - phasor(l);
}

double occupation(double T, double omega, const PhysicalConstants& consts) {
    if (!(omega > 0.0)) {
        throw std::domain_error("occupation: omega must be positive");
    }
    if (!(T >= 0.0)) {
        throw std::domain_error("occupation: temperature must be nonnegative");
    }
    if (T == 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(consts.hbar * omega / (consts.kB * T));
}

Eigen::VectorXd occupations(const ResonatorNetwork& net, const PhysicalConstants& consts) {
    Eigen::VectorXd n(net.omega.size());
    for (Eigen::Index k = 0; k < n.size(); ++k) {
        n[k] = occupation(net.T[k], net.omega[k], consts);
    }
    return n;
}

namespace {

void error(std::vector<Diagnostic>& out, const std::string& msg) {
    out.push_back({Severity::error, msg});
}

void warning(std::vector<Diagnostic>& out, const std::string& msg) {
    out.push_back({Severity::warning, msg});
}

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

} // namespace

std::vector<Diagnostic> validate(const ResonatorNetwork& net, const ModulationProtocol& mod,
                                 const PhysicalConstants& consts) {
    std::vector<Diagnostic> out;

    if (!(consts.hbar > 0.0) || !(consts.kB > 0.0)) {
        error(out, "physical constants hbar and kB must be positive");
    }

    const auto N = net.omega.size();
    if (N == 0) {
        error(out, "network must contain at least one resonator");
        return out;
    }
    if (net.kappa.size() != N || net.T.size() != N || net.g.rows() != N || net.g.cols() != N) {
        error(out, "network arrays must all have length N = " + std::to_string(N));
        return out;
    }
    if (!all_finite(net.omega) || !all_finite(net.kappa) || !all_finite(net.T) || !net.g.allFinite()) {
        error(out, "network parameters must be finite");
    }
    if ((net.omega.array() <= 0.0).any()) {
        error(out, "omega must be strictly positive");
    }
    if ((net.kappa.array() <= 0.0).any()) {
        error(out, "kappa must be strictly positive");
    }
    if ((net.T.array() < 0.0).any()) {
        error(out, "temperatures must be nonnegative");
    }
    for (Eigen::Index i = 0; i < N; ++i) {
        if (net.g(i, i) != cplx{0.0, 0.0}) {
            error(out, "coupling diagonal g_ii must be zero (i = " + std::to_string(i + 1) + ")");
        }
    }
    if (net.hermitian) {
        const double scale = std::max(net.g.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
        const double asym = (net.g - net.g.adjoint()).cwiseAbs().maxCoeff();
        if (asym > 4.0 * std::numeric_limits<double>::epsilon() * scale) {
            error(out, "hermitian network requires g_ij = conj(g_ji)");
        }
    }

    if (mod.theta.size() != N || static_cast<Eigen::Index>(mod.mask.size()) != N) {
        error(out, "modulation theta and mask must have length N = " + std::to_string(N));
        return out;
    }
    if (!all_finite(mod.theta) || !std::isfinite(mod.beta) || !std::isfinite(mod.Omega)) {
        error(out, "modulation parameters must be finite");
    }
    if (!(mod.beta >= 0.0)) {
        error(out, "beta must be nonnegative");
    }
    if (!(mod.Omega > 0.0)) {
        error(out, "Omega must be strictly positive");
    }
    for (std::size_t k = 0; k < mod.mask.size(); ++k) {
        if (mod.mask[k] != 0 && mod.mask[k] != 1) {
            error(out, "mask entries must be 0 or 1 (resonator " + std::to_string(k + 1) + ")");
        }
    }
    if (has_errors(out)) {
        return out;
    }

    // White-noise applicability: n_k is held at its unmodulated value.
    const double omega_min = net.omega.minCoeff();
    if (mod.beta >= 0.1 * omega_min) {
        std::ostringstream s;
        s << "white-noise regime questionable: beta = " << mod.beta << " >= 0.1 min(omega) = " << 0.1 * omega_min;
        warning(out, s.str());
    }
    double T_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < N; ++k) {
        if (net.T[k] > 0.0) {
            T_min = std::min(T_min, net.T[k]);
        }
    }
    if (std::isfinite(T_min) && consts.hbar * mod.Omega >= 0.1 * consts.kB * T_min) {
        std::ostringstream s;
        s << "white-noise regime questionable: hbar Omega / kB T_min = "
          << consts.hbar * mod.Omega / (consts.kB * T_min) << " >= 0.1";
        warning(out, s.str());
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

void require_valid(const ResonatorNetwork& net, const ModulationProtocol& mod, const PhysicalConstants& consts) {
    const auto diags = validate(net, mod, consts);
    if (!has_errors(diags)) {
        return;
    }
    std::string msg = "invalid input:";
    for (const auto& d : diags) {
        if (d.severity == Severity::error) {
            msg += " " + d.message + ";";
        }
    }
    throw ValidationError(msg);
}

std::pair<ResonatorNetwork, ModulationProtocol> build_chain4(double omega0, double g, double kappa,
                                                             double beta, double Omega, double theta) {
    constexpr int N = 4;
    ResonatorNetwork net;
    net.omega = Eigen::VectorXd::Constant(N, omega0);
    net.kappa = Eigen::VectorXd::Constant(N, kappa);
    net.T = Eigen::VectorXd::Zero(N);
    net.g = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i) {
        net.g(i, i + 1) = g;
        net.g(i + 1, i) = g;
    }
    net.hermitian = true;

    ModulationProtocol mod;
    mod.beta = beta;
    mod.Omega = Omega;
    mod.theta = Eigen::VectorXd::Zero(N);
    mod.theta[2] = theta;
    mod.mask = {0, 1, 1, 0};
    return {net, mod};
}

ResonatorNetwork with_single_hot_bath(const ResonatorNetwork& net, std::size_t hot, double T_hot) {
    ResonatorNetwork out = net;
    out.T.setZero();
    out.T[static_cast<Eigen::Index>(hot)] = T_hot;
    return out;
}

} // namespace synheat
