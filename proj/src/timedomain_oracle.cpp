#include "synheat/timedomain_oracle.hpp"

#include "synheat/errors.hpp"
#include "synheat/master_floquet.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace synheat {

namespace {

constexpr cplx I{0.0, 1.0};

// Static part: the unmodulated moment equations.
Eigen::MatrixXcd static_generator(const ResonatorNetwork& net) {
    const std::size_t N = net.size();
    const MomentIndexMap idx(N);
    const auto D = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(D, D);
    auto e = [&](std::size_t k, std::size_t l) { return static_cast<Eigen::Index>(idx.index(k, l)); };
    auto g = [&](std::size_t i, std::size_t j) { return net.g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); };

    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = 0; l < N; ++l) {
            const auto r = e(k, l);
            const auto ki = static_cast<Eigen::Index>(k);
            const auto li = static_cast<Eigen::Index>(l);
            // Heisenberg picture: d<a_k^+ a_l>/dt = i(w_k - w_l) <..> - (kappa_k + kappa_l) <..>
            //   + i sum_j g_jk <a_j^+ a_l> - i sum_j g_lj <a_k^+ a_j>   (+ 2 kappa_k n_k if k == l)
            G(r, r) += I * (net.omega[ki] - net.omega[li]) - net.kappa[ki] - net.kappa[li];
            for (std::size_t j = 0; j < N; ++j) {
                if (j != k) {
                    G(r, e(j, l)) += I * g(j, k);
                }
                if (j != l) {
                    G(r, e(k, j)) -= I * g(l, j);
                }
            }
        }
    }
    return G;
}

// Time-dependent diagonal: i beta (m_k cos(Omega t + theta_k) - m_l cos(Omega t + theta_l)).
class ModulationTerm {
public:
    ModulationTerm(const ModulationProtocol& mod, std::size_t N) : mod_(mod), idx_(N) {}

    Eigen::VectorXcd at(double t) const {
        const std::size_t N = idx_.N();
        Eigen::VectorXd c(static_cast<Eigen::Index>(N));
        for (std::size_t k = 0; k < N; ++k) {
            const auto ki = static_cast<Eigen::Index>(k);
            c[ki] = mod_.mask[k] * mod_.beta * std::cos(mod_.Omega * t + mod_.theta[ki]);
        }
        Eigen::VectorXcd d(static_cast<Eigen::Index>(idx_.size()));
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            const auto [k, l] = idx_.pair(i);
            d[static_cast<Eigen::Index>(i)] = I * (c[static_cast<Eigen::Index>(k)] - c[static_cast<Eigen::Index>(l)]);
        }
        return d;
    }

private:
    const ModulationProtocol& mod_;
    MomentIndexMap idx_;
};

Eigen::VectorXcd drive(const ResonatorNetwork& net, const OracleOptions& opts) {
    Eigen::VectorXd occ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.size()));
    for (Eigen::Index k = 0; k < occ.size(); ++k) {
        if (!opts.source || *opts.source == static_cast<std::size_t>(k)) {
            occ[k] = occupation(net.T[k], net.omega[k], opts.consts);
        }
    }
    return source_vector(net, occ);
}

} // namespace

MomentGenerator generator(const ResonatorNetwork& net, const ModulationProtocol& mod, double t,
                          const OracleOptions& opts) {
    MomentGenerator out{static_generator(net), drive(net, opts)};
    out.G.diagonal() += ModulationTerm(mod, net.size()).at(t);
    return out;
}

std::vector<MomentState> evolve_to_cycle(const ResonatorNetwork& net, const ModulationProtocol& mod, double rtol,
                                         int max_periods, const OracleOptions& opts) {
    if (!(rtol > 0.0)) {
        throw std::invalid_argument("evolve_to_cycle: rtol must be positive");
    }
    if (opts.steps_per_period < 8) {
        throw ConvergenceError("evolve_to_cycle: at least 8 steps per period required");
    }
    if (opts.source && *opts.source >= net.size()) {
        throw std::out_of_range("evolve_to_cycle: source bath index out of range");
    }
    require_valid(net, mod, opts.consts);

    const std::size_t N = net.size();
    const auto Ni = static_cast<Eigen::Index>(N);
    const Eigen::MatrixXcd G0 = static_generator(net);
    const Eigen::VectorXcd s = drive(net, opts);
    const ModulationTerm modulation(mod, N);

    const double period = 2.0 * std::numbers::pi / mod.Omega;
    const int steps = opts.steps_per_period;
    const double h = period / steps;
    const double rate_bound = G0.cwiseAbs().rowwise().sum().maxCoeff() + 2.0 * mod.beta;
    if (h * rate_bound > 1.0) {
        throw ConvergenceError("evolve_to_cycle: step size too large for the fastest rate (h * rate = " +
                               std::to_string(h * rate_bound) + "); increase steps_per_period");
    }

    auto rhs = [&](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        return G0 * y + modulation.at(t).cwiseProduct(y) + s;
    };

    std::vector<MomentState> samples(static_cast<std::size_t>(steps) + 1);
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(G0.rows());
    Eigen::VectorXd previous_avg;
    double t = 0.0;
    for (int p = 0; p < max_periods; ++p) {
        const double t0 = p * period;
        samples[0] = {t0, y};
        for (int i = 0; i < steps; ++i) {
            t = t0 + i * h;
            const Eigen::VectorXcd k1 = rhs(t, y);
            const Eigen::VectorXcd k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
            const Eigen::VectorXcd k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
            const Eigen::VectorXcd k4 = rhs(t + h, y + h * k3);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            samples[static_cast<std::size_t>(i) + 1] = {t0 + (i + 1) * h, y};
        }
        if (!y.allFinite()) {
            throw NonFiniteError("evolve_to_cycle: trajectory diverged");
        }
        const Eigen::VectorXd avg = cycle_average(samples).head(Ni).real();
        if (previous_avg.size() == Ni) {
            const Eigen::ArrayXd change = (avg - previous_avg).array().abs();
            if ((change <= rtol * avg.array().abs()).all()) {
                return samples;
            }
        }
        previous_avg = avg;
    }
    throw ConvergenceError("evolve_to_cycle: no periodic steady state after " + std::to_string(max_periods) +
                           " periods at rtol = " + std::to_string(rtol));
}

Eigen::VectorXcd cycle_average(const std::vector<MomentState>& samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("cycle_average: need at least two samples");
    }
    const std::size_t m = samples.size() - 1;
    Eigen::VectorXcd acc = 0.5 * (samples.front().y + samples.back().y);
    for (std::size_t i = 1; i < m; ++i) {
        acc += samples[i].y;
    }
    return acc / static_cast<double>(m);
}

PowerRow cycle_average_power(const std::vector<MomentState>& samples, const ResonatorNetwork& net,
                             std::size_t source, const PhysicalConstants& consts) {
    if (source >= net.size()) {
        throw std::out_of_range("cycle_average_power: source bath index out of range");
    }
    const auto k = static_cast<Eigen::Index>(source);
    const auto N = static_cast<Eigen::Index>(net.size());
    const Eigen::VectorXcd avg = cycle_average(samples);
    const double prefactor = consts.hbar * net.omega[k];
    PowerRow row{Eigen::VectorXd::Zero(N), 0.0};
    for (Eigen::Index l = 0; l < N; ++l) {
        if (l != k) {
            row.P[l] = prefactor * 2.0 * net.kappa[l] * avg[l].real();
        }
    }
    row.P_em = prefactor * 2.0 * net.kappa[k] * (occupation(net.T[k], net.omega[k], consts) - avg[k].real());
    return row;
}

void write_trajectory_csv(std::ostream& out, const std::vector<MomentState>& samples) {
    out << "t_s,moment_index,re,im\n";
    out.precision(17);
    for (const auto& s : samples) {
        for (Eigen::Index i = 0; i < s.y.size(); ++i) {
            out << s.t << ',' << i << ',' << s.y[i].real() << ',' << s.y[i].imag() << '\n';
        }
    }
}

} // namespace synheat
