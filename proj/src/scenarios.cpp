#include "synheat/scenarios.hpp"

#include "synheat/errors.hpp"
#include "synheat/master_floquet.hpp"
#include "synheat/perturbation.hpp"
#include "synheat/timedomain_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace synheat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_endpoints(const ResonatorNetwork& net, const RunSettings& s) {
    if (s.source >= net.size() || s.target >= net.size() || s.source == s.target) {
        throw ValidationError("source and target must be distinct resonators of the network");
    }
}

double qme_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t from, std::size_t to,
                 int n_max, const RunSettings& s) {
    const ResonatorNetwork hot = with_single_hot_bath(net, from, s.T_hot);
    const FourierSolution sol = solve_fourier(hot, mod, TruncationOrder(n_max), from, s.consts);
    const MomentIndexMap idx(net.size());
    const auto f = static_cast<Eigen::Index>(from);
    const auto t = static_cast<Eigen::Index>(to);
    return s.consts.hbar * net.omega[f] * 2.0 * net.kappa[t] * sol.coeff(0, idx.index(to, to)).real();
}

double qle_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t from, std::size_t to,
                 int n_max, const RunSettings& s) {
    const ResonatorNetwork hot = with_single_hot_bath(net, from, s.T_hot);
    return integrate_power(hot, mod, from, to, TruncationOrder(n_max), s.quad_tol, s.consts);
}

double oracle_power(const ResonatorNetwork& net, const ModulationProtocol& mod, std::size_t from, std::size_t to,
                    const RunSettings& s) {
    const ResonatorNetwork hot = with_single_hot_bath(net, from, s.T_hot);
    OracleOptions opts;
    opts.steps_per_period = s.oracle_steps_per_period;
    opts.source = from;
    opts.consts = s.consts;
    const auto samples = evolve_to_cycle(hot, mod, s.oracle_rtol, 2000, opts);
    return cycle_average_power(samples, hot, from, s.consts).P[static_cast<Eigen::Index>(to)];
}

double relative_deviation(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
    case Method::qle: return "qle";
    case Method::qme: return "qme";
    case Method::oracle: return "oracle";
    case Method::pert1: return "pert1";
    case Method::pert2: return "pert2";
    case Method::closed: return "closed";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::qle, Method::qme, Method::oracle, Method::pert1, Method::pert2, Method::closed}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw ValidationError("unknown method '" + std::string(name) + "' (expected qle, qme, oracle, pert1, pert2, closed)");
}

std::vector<Method> parse_methods(std::string_view list) {
    std::vector<Method> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        const std::string_view item = list.substr(pos, comma - pos);
        if (!item.empty()) {
            const Method m = parse_method(item);
            if (std::find(out.begin(), out.end(), m) == out.end()) {
                out.push_back(m);
            }
        }
        pos = comma + 1;
    }
    if (out.empty()) {
        throw ValidationError("at least one method is required");
    }
    return out;
}

int default_n_max(Method m) { return m == Method::qle ? 10 : 15; }

ForwardBackward run_forward_backward(const ResonatorNetwork& net, const ModulationProtocol& mod, Method method,
                                     const RunSettings& s) {
    check_endpoints(net, s);
    require_valid(net, mod, s.consts);
    const int n = s.n_max.value_or(default_n_max(method));
    const std::size_t a = s.source;
    const std::size_t b = s.target;
    switch (method) {
    case Method::qme: return {qme_power(net, mod, a, b, n, s), qme_power(net, mod, b, a, n, s)};
    case Method::qle: return {qle_power(net, mod, a, b, n, s), qle_power(net, mod, b, a, n, s)};
    case Method::oracle: return {oracle_power(net, mod, a, b, s), oracle_power(net, mod, b, a, s)};
    case Method::pert1:
    case Method::pert2: {
        const auto v = method == Method::pert1 ? PerturbationVariant::matrix_inverse : PerturbationVariant::neumann;
        const PowerPair p = power_second_order(net, mod, v, a, b, s.T_hot, s.consts);
        return {p.forward, p.backward};
    }
    case Method::closed: return {kNaN, kNaN};
    }
    throw std::logic_error("run_forward_backward: unhandled method");
}

double closed_form_difference(const ResonatorNetwork& net, const ModulationProtocol& mod, const RunSettings& s) {
    const Chain4Parameters c = chain4_parameters(net, mod);
    if (s.source != 0 || s.target != 3) {
        throw ValidationError("the closed form is defined for source 1 and target 4 only");
    }
    const double n = occupation(s.T_hot, c.omega0, s.consts);
    return delta_power_weak_coupling(c.omega0, n, c.g, c.kappa, c.beta, c.Omega, c.theta, s.consts);
}

double rectification(double P14, double P41) {
    const double sum = P14 + P41;
    if (sum == 0.0) {
        throw std::domain_error("rectification: both powers are zero");
    }
    return (P14 - P41) / sum;
}

std::string_view to_string(SweepParameter p) {
    switch (p) {
    case SweepParameter::beta: return "beta";
    case SweepParameter::theta: return "theta";
    case SweepParameter::Omega: return "Omega";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (SweepParameter p : {SweepParameter::beta, SweepParameter::theta, SweepParameter::Omega}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw ValidationError("unknown sweep parameter '" + std::string(name) + "' (expected beta, theta, Omega)");
}

ModulationProtocol apply_parameter(const ModulationProtocol& mod, SweepParameter p, double value,
                                   std::size_t theta_index) {
    ModulationProtocol out = mod;
    switch (p) {
    case SweepParameter::beta: out.beta = value; break;
    case SweepParameter::Omega: out.Omega = value; break;
    case SweepParameter::theta:
        if (theta_index >= static_cast<std::size_t>(out.theta.size())) {
            throw ValidationError("theta index outside the network");
        }
        out.theta[static_cast<Eigen::Index>(theta_index)] = value;
        break;
    }
    return out;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
    if (spec.values.empty()) {
        throw ValidationError("sweep needs at least one value");
    }
    if (spec.methods.empty()) {
        throw ValidationError("sweep needs at least one method");
    }
    for (double v : spec.values) {
        if (!std::isfinite(v)) {
            throw ValidationError("sweep values must be finite");
        }
    }
    std::vector<double> values = spec.values;
    std::sort(values.begin(), values.end());
    std::vector<Method> methods = spec.methods;
    std::sort(methods.begin(), methods.end());

    const std::size_t n_tasks = values.size() * methods.size();
    std::vector<SweepRow> rows(n_tasks);
    auto run_task = [&](std::size_t i) {
        const double value = values[i / methods.size()];
        const Method method = methods[i % methods.size()];
        const ModulationProtocol mod = apply_parameter(spec.mod, spec.parameter, value, spec.theta_index);
        const double theta = mod.theta.size() > static_cast<Eigen::Index>(spec.theta_index)
                                 ? mod.theta[static_cast<Eigen::Index>(spec.theta_index)]
                                 : kNaN;
        SweepRow row{spec.parameter, value, method, mod.beta, theta, mod.Omega, kNaN, kNaN, kNaN, kNaN, "ok"};
        try {
            if (method == Method::closed) {
                row.dP = closed_form_difference(spec.net, mod, spec.settings);
            } else {
                const ForwardBackward fb = run_forward_backward(spec.net, mod, method, spec.settings);
                row.P_fwd = fb.P_fwd;
                row.P_bwd = fb.P_bwd;
                row.dP = fb.P_fwd - fb.P_bwd;
                row.E = rectification(fb.P_fwd, fb.P_bwd);
            }
        } catch (const std::exception& e) {
            row.status = e.what();
        }
        rows[i] = std::move(row);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(spec.parallel, static_cast<unsigned>(n_tasks)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) {
            run_task(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n_tasks; i = next++) {
                    run_task(i);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return rows;
}

std::vector<double> GridSpec::grid() const {
    if (points < 2 || !(hi > lo)) {
        throw ValidationError("frequency grid needs hi > lo and at least two points");
    }
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return g;
}

SpectrumPair spectrum_run(const ResonatorNetwork& net, const ModulationProtocol& mod, const GridSpec& grid,
                          const RunSettings& s) {
    check_endpoints(net, s);
    require_valid(net, mod, s.consts);
    const TruncationOrder n(s.n_max.value_or(default_n_max(Method::qle)));
    SpectrumPair out;
    out.grid = grid.grid();
    out.forward = heat_flux_spectrum(with_single_hot_bath(net, s.source, s.T_hot), mod, s.source, s.target, out.grid,
                                     n, s.consts);
    out.backward = heat_flux_spectrum(with_single_hot_bath(net, s.target, s.T_hot), mod, s.target, s.source,
                                      out.grid, n, s.consts);
    return out;
}

CompareReport compare_methods(const ResonatorNetwork& net, const ModulationProtocol& mod, const RunSettings& s) {
    CompareReport report;
    for (Method m : {Method::qme, Method::qle, Method::oracle}) {
        MethodResult r{m};
        try {
            const ForwardBackward fb = run_forward_backward(net, mod, m, s);
            r.P_fwd = fb.P_fwd;
            r.P_bwd = fb.P_bwd;
        } catch (const std::exception& e) {
            r.status = e.what();
            report.diagnostics.push_back(std::string(to_string(m)) + " failed: " + e.what());
        }
        report.results.push_back(r);
    }
    const MethodResult& qme = report.results[0];
    const MethodResult& qle = report.results[1];
    const MethodResult& orc = report.results[2];
    auto dev = [](const MethodResult& a, const MethodResult& b) {
        if (a.status != "ok" || b.status != "ok") {
            return std::numeric_limits<double>::infinity();
        }
        return std::max(relative_deviation(a.P_fwd, b.P_fwd), relative_deviation(a.P_bwd, b.P_bwd));
    };
    report.dev_qme_qle = dev(qme, qle);
    report.dev_qme_oracle = dev(qme, orc);

    if (qme.status == "ok") {
        RunSettings wider = s;
        wider.n_max = s.n_max.value_or(default_n_max(Method::qme)) + 2;
        try {
            const ForwardBackward fb = run_forward_backward(net, mod, Method::qme, wider);
            report.truncation_change =
                std::max(relative_deviation(fb.P_fwd, qme.P_fwd), relative_deviation(fb.P_bwd, qme.P_bwd));
            if (report.truncation_change > kTruncationWarn) {
                report.diagnostics.push_back("qme truncation not converged: n_max -> n_max + 2 changes the powers by " +
                                             std::to_string(report.truncation_change));
            }
        } catch (const std::exception& e) {
            report.diagnostics.push_back(std::string("truncation check failed: ") + e.what());
        }
    }
    if (report.dev_qme_qle > kCompareQleTol) {
        report.diagnostics.push_back("qme and qle differ by " + std::to_string(report.dev_qme_qle));
    }
    if (report.dev_qme_oracle > kCompareOracleTol) {
        report.diagnostics.push_back("qme and oracle differ by " + std::to_string(report.dev_qme_oracle));
    }
    report.pass = report.dev_qme_qle <= kCompareQleTol && report.dev_qme_oracle <= kCompareOracleTol;
    return report;
}

std::pair<ResonatorNetwork, ModulationProtocol> chain4_from_setup(const Chain4Setup& s, double beta_ratio,
                                                                  double theta) {
    const double kappa = s.kappa_ratio * s.omega0;
    return build_chain4(s.omega0, s.g_ratio * kappa, kappa, beta_ratio * s.omega0, s.Omega_ratio * s.omega0, theta);
}

} // namespace synheat
