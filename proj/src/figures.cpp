#include "synheat/figures.hpp"

#include "synheat/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace synheat {

namespace {

constexpr double pi = std::numbers::pi;

RunSettings chain_settings(const Chain4Setup& setup, RunSettings s) {
    s.T_hot = setup.T_hot;
    s.source = 0;
    s.target = 3;
    return s;
}

} // namespace

std::vector<double> linspace_step(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) {
        throw ValidationError("grid needs step > 0 and hi >= lo");
    }
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-3));
    for (long i = 0; i <= n; ++i) {
        out.push_back(lo + static_cast<double>(i) * step);
    }
    return out;
}

std::vector<NormalizedRow> fig3a(const Chain4Setup& setup, const std::vector<double>& beta_ratios,
                                 const std::vector<double>& theta_over_pi, const std::vector<Method>& methods,
                                 const RunSettings& settings, unsigned parallel) {
    const RunSettings s = chain_settings(setup, settings);
    std::map<Method, double> baseline;
    for (Method m : methods) {
        if (m == Method::closed) {
            continue;
        }
        const auto [net, mod] = chain4_from_setup(setup, 0.0, 0.0);
        baseline[m] = run_forward_backward(net, mod, m, s).P_fwd;
    }
    std::vector<NormalizedRow> out;
    for (double th : theta_over_pi) {
        const auto [net, mod] = chain4_from_setup(setup, 0.0, th * pi);
        SweepSpec spec;
        spec.parameter = SweepParameter::beta;
        for (double b : beta_ratios) {
            spec.values.push_back(b * setup.omega0);
        }
        spec.net = net;
        spec.mod = mod;
        spec.settings = s;
        spec.methods = methods;
        spec.parallel = parallel;
        for (const SweepRow& r : sweep(spec)) {
            const double p0 = r.method == Method::closed ? baseline.at(Method::qme) : baseline.at(r.method);
            out.push_back({r, p0, r.P_fwd / p0, r.P_bwd / p0});
        }
    }
    return out;
}

std::vector<PerturbationRow> fig3b(const Chain4Setup& setup, const std::vector<double>& beta_ratios,
                                   double theta_over_pi, const RunSettings& settings) {
    const RunSettings s = chain_settings(setup, settings);
    const auto [net0, mod0] = chain4_from_setup(setup, 0.0, theta_over_pi * pi);
    const double P0 = run_forward_backward(net0, mod0, Method::qme, s).P_fwd;
    std::vector<PerturbationRow> out;
    for (double b : beta_ratios) {
        const auto [net, mod] = chain4_from_setup(setup, b, theta_over_pi * pi);
        const ForwardBackward exact = run_forward_backward(net, mod, Method::qme, s);
        const ForwardBackward pa1 = run_forward_backward(net, mod, Method::pert1, s);
        const ForwardBackward pa2 = run_forward_backward(net, mod, Method::pert2, s);
        out.push_back({mod.beta, theta_over_pi * pi, exact.P_fwd - exact.P_bwd, pa1.P_fwd - pa1.P_bwd,
                       pa2.P_fwd - pa2.P_bwd, closed_form_difference(net, mod, s), P0});
    }
    return out;
}

std::vector<SweepRow> fig4(const Chain4Setup& setup, const std::vector<double>& theta_over_pi,
                           const std::vector<double>& beta_ratios, const std::vector<Method>& methods,
                           const RunSettings& settings, unsigned parallel) {
    const RunSettings s = chain_settings(setup, settings);
    std::vector<SweepRow> out;
    for (double b : beta_ratios) {
        const auto [net, mod] = chain4_from_setup(setup, b, 0.0);
        SweepSpec spec;
        spec.parameter = SweepParameter::theta;
        for (double th : theta_over_pi) {
            spec.values.push_back(th * pi);
        }
        spec.net = net;
        spec.mod = mod;
        spec.settings = s;
        spec.methods = methods;
        spec.parallel = parallel;
        const auto rows = sweep(spec);
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

SpectrumPair fig6(const Chain4Setup& setup, double beta_ratio, double theta_over_pi, const GridSpec& grid,
                  const RunSettings& settings) {
    const auto [net, mod] = chain4_from_setup(setup, beta_ratio, theta_over_pi * pi);
    return spectrum_run(net, mod, grid, chain_settings(setup, settings));
}

std::vector<Fig7Row> fig7(const Chain4Setup& setup, const std::vector<double>& beta_ratios, double theta_over_pi,
                          const RunSettings& settings) {
    const RunSettings s = chain_settings(setup, settings);
    std::vector<Fig7Row> out;
    for (double b : beta_ratios) {
        const auto [net, mod] = chain4_from_setup(setup, b, theta_over_pi * pi);
        const ForwardBackward exact = run_forward_backward(net, mod, Method::qme, s);
        const ForwardBackward pa1 = run_forward_backward(net, mod, Method::pert1, s);
        const ForwardBackward pa2 = run_forward_backward(net, mod, Method::pert2, s);
        out.push_back({mod.beta, exact.P_fwd, pa1.P_fwd, pa2.P_fwd, exact.P_bwd, pa1.P_bwd, pa2.P_bwd});
    }
    return out;
}

} // namespace synheat
