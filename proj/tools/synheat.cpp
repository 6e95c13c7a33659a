// synheat: command line driver for the Floquet heat-transfer solvers
//
// Exit codes: 0 success, 1 compare reported FAIL, 2 solver error,
// 3 invalid input or configuration.

#include "synheat/config.hpp"
#include "synheat/csv.hpp"
#include "synheat/errors.hpp"
#include "synheat/figures.hpp"
#include "synheat/langevin_floquet.hpp"
#include "synheat/master_floquet.hpp"
#include "synheat/timedomain_oracle.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace synheat;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitSolver = 2;
constexpr int kExitInvalid = 3;

struct Common {
    std::string config;
    std::optional<int> nmax;
    std::optional<double> quad_tol;
    std::string out;
    std::string methods;
    unsigned parallel{1};
    std::optional<double> beta;   // units of omega_1
    std::optional<double> theta;  // units of pi, applied to resonator 3
    std::optional<double> Omega;  // units of omega_1
    std::optional<double> T_hot;
};

void add_common(CLI::App* app, Common& c, bool with_methods) {
    app->add_option("--config", c.config, "YAML configuration (default: the four-resonator chain)");
    app->add_option("--nmax", c.nmax, "sideband truncation order")->check(CLI::NonNegativeNumber);
    app->add_option("--quad-tol", c.quad_tol, "relative quadrature tolerance for qle")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "output CSV (default: stdout)");
    if (with_methods) {
        app->add_option("--methods", c.methods, "comma separated: qle,qme,oracle,pert1,pert2,closed");
    }
    app->add_option("--parallel", c.parallel, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app->add_option("--beta", c.beta, "modulation amplitude in units of omega_1");
    app->add_option("--theta", c.theta, "phase of resonator 3 in units of pi");
    app->add_option("--Omega", c.Omega, "modulation frequency in units of omega_1");
    app->add_option("--T-hot", c.T_hot, "hot bath temperature [K]")->check(CLI::NonNegativeNumber);
}

Config resolve(const Common& c) {
    Config cfg = c.config.empty() ? chain4_config(Chain4Setup{}, 0.0, 0.0) : load_config(c.config);
    const double w1 = cfg.net.omega[0];
    if (c.beta) {
        cfg.mod.beta = *c.beta * w1;
    }
    if (c.Omega) {
        cfg.mod.Omega = *c.Omega * w1;
    }
    if (c.theta) {
        if (cfg.mod.theta.size() < 3) {
            throw ValidationError("--theta needs at least three resonators");
        }
        cfg.mod.theta[2] = *c.theta * std::numbers::pi;
    }
    if (c.nmax) {
        cfg.settings.n_max = *c.nmax;
    }
    if (c.quad_tol) {
        cfg.settings.quad_tol = *c.quad_tol;
    }
    if (c.T_hot) {
        cfg.settings.T_hot = *c.T_hot;
        if (cfg.chain4) {
            cfg.chain4->T_hot = *c.T_hot;
            cfg.net.T[0] = *c.T_hot;
            cfg.net.T[3] = *c.T_hot;
        }
    }
    for (const auto& d : validate(cfg.net, cfg.mod, cfg.consts)) {
        std::cerr << (d.severity == Severity::error ? "error: " : "warning: ") << d.message << '\n';
    }
    require_valid(cfg.net, cfg.mod, cfg.consts);
    return cfg;
}

Chain4Setup chain_setup(const Common& c) {
    Chain4Setup s;
    if (!c.config.empty()) {
        const Config cfg = load_config(c.config);
        if (!cfg.chain4) {
            throw ValidationError("figure presets need a chain4 configuration");
        }
        s = *cfg.chain4;
    }
    if (c.Omega) {
        s.Omega_ratio = *c.Omega;
    }
    if (c.T_hot) {
        s.T_hot = *c.T_hot;
    }
    return s;
}

RunSettings chain_run_settings(const Common& c) {
    RunSettings r;
    if (!c.config.empty()) {
        r = load_config(c.config).settings;
    }
    if (c.nmax) {
        r.n_max = *c.nmax;
    }
    if (c.quad_tol) {
        r.quad_tol = *c.quad_tol;
    }
    return r;
}

std::vector<Method> methods_or(const Common& c, std::vector<Method> fallback) {
    return c.methods.empty() ? fallback : parse_methods(c.methods);
}

// "a,b,c" or "lo:hi:step"
std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    try {
        if (text.find(':') != std::string::npos) {
            std::vector<double> parts;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ':')) {
                parts.push_back(std::stod(item));
            }
            if (parts.size() != 3) {
                throw ValidationError("range must be lo:hi:step");
            }
            return linspace_step(parts[0], parts[1], parts[2]);
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) {
                out.push_back(std::stod(item));
            }
        }
    } catch (const std::logic_error&) {
        throw ValidationError("cannot parse value list '" + text + "'");
    }
    if (out.empty()) {
        throw ValidationError("empty value list");
    }
    return out;
}

void emit(const Common& c, const std::function<void(std::ostream&)>& write) {
    if (c.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(c.out);
    if (!f) {
        throw ValidationError("cannot open output file '" + c.out + "'");
    }
    write(f);
}

int run_power(const Common& c, const std::string& method_name) {
    const Config cfg = resolve(c);
    const Method m = parse_method(method_name);
    const int n = cfg.settings.n_max.value_or(default_n_max(m));
    PowerMatrix pm;
    switch (m) {
    case Method::qme: pm = power_matrix(cfg.net, cfg.mod, TruncationOrder(n), cfg.consts); break;
    case Method::qle:
        pm = langevin_power_matrix(cfg.net, cfg.mod, TruncationOrder(n), cfg.settings.quad_tol, cfg.consts);
        break;
    case Method::oracle: {
        const auto N = static_cast<Eigen::Index>(cfg.net.size());
        pm.P = Eigen::MatrixXd::Zero(N, N);
        pm.P_em = Eigen::VectorXd::Zero(N);
        for (Eigen::Index k = 0; k < N; ++k) {
            if (cfg.net.T[k] <= 0.0) {
                continue;
            }
            const ResonatorNetwork hot = with_single_hot_bath(cfg.net, static_cast<std::size_t>(k), cfg.net.T[k]);
            OracleOptions opts;
            opts.source = static_cast<std::size_t>(k);
            opts.steps_per_period = cfg.settings.oracle_steps_per_period;
            opts.consts = cfg.consts;
            const auto samples = evolve_to_cycle(hot, cfg.mod, cfg.settings.oracle_rtol, 2000, opts);
            const PowerRow row = cycle_average_power(samples, hot, static_cast<std::size_t>(k), cfg.consts);
            pm.P.row(k) = row.P.transpose();
            pm.P_em[k] = row.P_em;
        }
        break;
    }
    default: throw ValidationError("power supports the qme, qle and oracle methods");
    }
    emit(c, [&](std::ostream& o) { write_power_csv(o, power_records(pm, cfg.net, cfg.mod, n)); });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet heat transfer between temporally modulated resonators"};
    app.require_subcommand(1);

    Common c;
    std::string method = "qme";
    std::string param = "beta";
    std::string values;
    std::string betas;
    std::string thetas;
    double lo = 0.85;
    double hi = 1.15;
    std::size_t points = 2001;
    double theta_fixed = 0.5;
    double beta_fixed = 0.05;

    auto* power = app.add_subcommand("power", "power matrix at one operating point");
    add_common(power, c, false);
    power->add_option("--method", method, "qme, qle or oracle");

    auto* spectrum = app.add_subcommand("spectrum", "forward and backward heat-flux spectra");
    add_common(spectrum, c, false);
    spectrum->add_option("--lo", lo, "grid start in units of omega_1");
    spectrum->add_option("--hi", hi, "grid end in units of omega_1");
    spectrum->add_option("--points", points, "grid points");

    auto* sweep_cmd = app.add_subcommand("sweep", "forward/backward powers along one parameter");
    add_common(sweep_cmd, c, true);
    sweep_cmd->add_option("--param", param, "beta, theta or Omega");
    sweep_cmd->add_option("--values", values, "list a,b,c or range lo:hi:step (omega_1 or pi units)")->required();

    auto* compare = app.add_subcommand("compare", "qme vs qle vs time-domain oracle at one point");
    add_common(compare, c, false);

    auto* f3a = app.add_subcommand("fig3a", "P14, P41 versus beta for theta = 0.1 pi and 0.5 pi");
    add_common(f3a, c, true);
    f3a->add_option("--betas", betas, "beta values (omega0 units)");
    f3a->add_option("--thetas", thetas, "theta values (pi units)");

    auto* f3b = app.add_subcommand("fig3b", "exact and perturbative P14 - P41 versus beta");
    add_common(f3b, c, false);
    f3b->add_option("--betas", betas, "beta values (omega0 units)");

    auto* f4 = app.add_subcommand("fig4", "rectification versus theta for several beta");
    add_common(f4, c, true);
    f4->add_option("--betas", betas, "beta values (omega0 units)");
    f4->add_option("--thetas", thetas, "theta values (pi units)");

    auto* f6 = app.add_subcommand("fig6", "spectra at beta = Omega = 0.05 omega0, theta = pi/2");
    add_common(f6, c, false);
    f6->add_option("--lo", lo, "grid start in units of omega0");
    f6->add_option("--hi", hi, "grid end in units of omega0");
    f6->add_option("--points", points, "grid points");

    auto* f7 = app.add_subcommand("fig7", "exact versus second-order P14, P41 versus beta");
    add_common(f7, c, false);
    f7->add_option("--betas", betas, "beta values (omega0 units)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (power->parsed()) {
            return run_power(c, method);
        }
        if (spectrum->parsed()) {
            const Config cfg = resolve(c);
            const double w1 = cfg.net.omega[0];
            const SpectrumPair sp = spectrum_run(cfg.net, cfg.mod, {lo * w1, hi * w1, points}, cfg.settings);
            emit(c, [&](std::ostream& o) { write_spectrum_csv(o, sp, cfg.settings.source, cfg.settings.target); });
            return 0;
        }
        if (sweep_cmd->parsed()) {
            const Config cfg = resolve(c);
            SweepSpec spec;
            spec.parameter = parse_sweep_parameter(param);
            const double unit = spec.parameter == SweepParameter::theta ? std::numbers::pi : cfg.net.omega[0];
            for (double v : parse_values(values)) {
                spec.values.push_back(v * unit);
            }
            spec.net = cfg.net;
            spec.mod = cfg.mod;
            spec.settings = cfg.settings;
            spec.methods = methods_or(c, {Method::qme});
            spec.parallel = c.parallel;
            const auto rows = sweep(spec);
            std::size_t failed = 0;
            for (const auto& r : rows) {
                failed += r.ok() ? 0 : 1;
            }
            if (failed) {
                std::cerr << "warning: " << failed << " sweep point(s) failed; see the status column\n";
            }
            emit(c, [&](std::ostream& o) { write_sweep_csv(o, rows); });
            return 0;
        }
        if (compare->parsed()) {
            const Config cfg = resolve(c);
            const CompareReport rep = compare_methods(cfg.net, cfg.mod, cfg.settings);
            std::printf("%-8s %-24s %-24s\n", "method", "P_fwd [W]", "P_bwd [W]");
            for (const auto& r : rep.results) {
                std::printf("%-8s %-24.12e %-24.12e %s\n", std::string(to_string(r.method)).c_str(), r.P_fwd, r.P_bwd,
                            r.status == "ok" ? "" : r.status.c_str());
            }
            std::printf("qme vs qle    : %.3e (limit %.1e)\n", rep.dev_qme_qle, kCompareQleTol);
            std::printf("qme vs oracle : %.3e (limit %.1e)\n", rep.dev_qme_oracle, kCompareOracleTol);
            std::printf("qme n_max+2   : %.3e\n", rep.truncation_change);
            for (const auto& d : rep.diagnostics) {
                std::printf("note: %s\n", d.c_str());
            }
            std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
            if (!c.out.empty()) {
                emit(c, [&](std::ostream& o) { write_compare_csv(o, rep); });
            }
            return rep.pass ? 0 : kExitFail;
        }

        const Chain4Setup setup = chain_setup(c);
        const RunSettings rs = chain_run_settings(c);
        if (f3a->parsed()) {
            const auto b = parse_values(betas.empty() ? "0:0.06:0.005" : betas);
            const auto t = parse_values(thetas.empty() ? "0.1,0.5" : thetas);
            const auto rows = fig3a(setup, b, t, methods_or(c, {Method::qme}), rs, c.parallel);
            emit(c, [&](std::ostream& o) { write_fig3a_csv(o, rows); });
        } else if (f3b->parsed()) {
            const auto b = parse_values(betas.empty() ? "0.002:0.06:0.002" : betas);
            const auto rows = fig3b(setup, b, c.theta.value_or(theta_fixed), rs);
            emit(c, [&](std::ostream& o) { write_perturbation_csv(o, rows, true); });
        } else if (f4->parsed()) {
            const auto t = parse_values(thetas.empty() ? "-1:1:0.02" : thetas);
            const auto b = parse_values(betas.empty() ? "0.01,0.03,0.05" : betas);
            const auto rows = fig4(setup, t, b, methods_or(c, {Method::qme}), rs, c.parallel);
            emit(c, [&](std::ostream& o) { write_sweep_csv(o, rows); });
        } else if (f6->parsed()) {
            const double w0 = setup.omega0;
            const SpectrumPair sp = fig6(setup, c.beta.value_or(beta_fixed), c.theta.value_or(theta_fixed),
                                         {lo * w0, hi * w0, points}, rs);
            emit(c, [&](std::ostream& o) { write_spectrum_csv(o, sp, 0, 3); });
        } else if (f7->parsed()) {
            const auto b = parse_values(betas.empty() ? "0:0.06:0.005" : betas);
            const auto rows = fig7(setup, b, c.theta.value_or(theta_fixed), rs);
            emit(c, [&](std::ostream& o) { write_fig7_csv(o, rows); });
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}
