#include "synheat/csv.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>

namespace synheat {

namespace {

void line(std::ostream& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) {
            out << ',';
        }
        out << c;
        first = false;
    }
    out << '\n';
}

std::string num(double x) { return format_number(x); }

std::string idx(std::size_t i) { return std::to_string(i + 1); }

// Free text may contain commas or quotes.
std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
    }
    return q + "\"";
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<PowerRecord> power_records(const PowerMatrix& pm, const ResonatorNetwork& net,
                                       const ModulationProtocol& mod, int n_max) {
    std::vector<PowerRecord> out;
    const std::size_t N = net.size();
    for (std::size_t k = 0; k < N; ++k) {
        if (net.T[static_cast<Eigen::Index>(k)] <= 0.0) {
            continue;
        }
        for (std::size_t l = 0; l < N; ++l) {
            if (l != k) {
                out.push_back({k, l, pm.P(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)),
                               pm.P_em[static_cast<Eigen::Index>(k)], n_max, mod.beta, mod.Omega, mod.theta});
            }
        }
    }
    return out;
}

void write_power_csv(std::ostream& out, const std::vector<PowerRecord>& rows) {
    line(out, {"source", "observer", "P_watt", "P_em_watt", "n_max", "beta", "Omega", "theta"});
    for (const auto& r : rows) {
        std::string th;
        for (Eigen::Index i = 0; i < r.theta.size(); ++i) {
            th += (i ? ";" : "") + num(r.theta[i]);
        }
        line(out, {idx(r.source), idx(r.observer), num(r.P), num(r.P_em), std::to_string(r.n_max), num(r.beta),
                   num(r.Omega), th});
    }
}

void write_spectrum_csv(std::ostream& out, const SpectrumPair& sp, std::size_t source, std::size_t target) {
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    line(out, {"omega_rad_s", "source_bath", "observer", "spectral_power_W_per_rad_s"});
    for (std::size_t i = 0; i < sp.grid.size(); ++i) {
        line(out, {num(sp.grid[i]), idx(source), idx(target), num(sp.forward[i] / two_pi)});
    }
    for (std::size_t i = 0; i < sp.grid.size(); ++i) {
        line(out, {num(sp.grid[i]), idx(target), idx(source), num(sp.backward[i] / two_pi)});
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    line(out, {"param", "value", "method", "beta", "theta", "Omega", "P_fwd_W", "P_bwd_W", "dP_W", "E", "status"});
    for (const auto& r : rows) {
        line(out, {std::string(to_string(r.parameter)), num(r.value), std::string(to_string(r.method)), num(r.beta),
                   num(r.theta), num(r.Omega), num(r.P_fwd), num(r.P_bwd), num(r.dP), num(r.E), quoted(r.status)});
    }
}

void write_fig3a_csv(std::ostream& out, const std::vector<NormalizedRow>& rows) {
    line(out, {"beta", "theta", "method", "P14_W", "P41_W", "P0_W", "P14_norm", "P41_norm", "E", "status"});
    for (const auto& n : rows) {
        const SweepRow& r = n.row;
        line(out, {num(r.beta), num(r.theta), std::string(to_string(r.method)), num(r.P_fwd), num(r.P_bwd),
                   num(n.baseline), num(n.P_fwd_norm), num(n.P_bwd_norm), num(r.E), quoted(r.status)});
    }
}

void write_perturbation_csv(std::ostream& out, const std::vector<PerturbationRow>& rows, bool normalized) {
    if (normalized) {
        line(out, {"beta", "theta", "dP_exact_W", "dP_pa1_W", "dP_pa2_W", "dP_closed_W", "P0_W", "dP_exact_norm",
                   "dP_pa1_norm", "dP_pa2_norm", "dP_closed_norm"});
    } else {
        line(out, {"beta", "theta", "dP_exact_W", "dP_pa1_W", "dP_pa2_W", "dP_closed_W"});
    }
    for (const auto& r : rows) {
        if (normalized) {
            line(out, {num(r.beta), num(r.theta), num(r.dP_exact), num(r.dP_pa1), num(r.dP_pa2), num(r.dP_closed),
                       num(r.P0), num(r.dP_exact / r.P0), num(r.dP_pa1 / r.P0), num(r.dP_pa2 / r.P0),
                       num(r.dP_closed / r.P0)});
        } else {
            line(out, {num(r.beta), num(r.theta), num(r.dP_exact), num(r.dP_pa1), num(r.dP_pa2), num(r.dP_closed)});
        }
    }
}

void write_fig7_csv(std::ostream& out, const std::vector<Fig7Row>& rows) {
    line(out, {"beta", "P14_exact_W", "P14_pa1_W", "P14_pa2_W", "P41_exact_W", "P41_pa1_W", "P41_pa2_W"});
    for (const auto& r : rows) {
        line(out, {num(r.beta), num(r.P14_exact), num(r.P14_pa1), num(r.P14_pa2), num(r.P41_exact), num(r.P41_pa1),
                   num(r.P41_pa2)});
    }
}

void write_compare_csv(std::ostream& out, const CompareReport& report) {
    line(out, {"method", "P_fwd_W", "P_bwd_W", "status"});
    for (const auto& r : report.results) {
        line(out, {std::string(to_string(r.method)), num(r.P_fwd), num(r.P_bwd), quoted(r.status)});
    }
}

} // namespace synheat
