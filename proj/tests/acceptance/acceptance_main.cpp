// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 1 if any fails.

#include "../unit/support.hpp"
#include "synheat/langevin_floquet.hpp"
#include "synheat/master_floquet.hpp"
#include "synheat/perturbation.hpp"
#include "synheat/scenarios.hpp"
#include "synheat/timedomain_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace synheat;
using namespace testing;

namespace {

constexpr double pi = std::numbers::pi;

// Pinned tolerances.
constexpr double kReferenceP0 = 5.88e-22;
constexpr double kBaselineTol = 0.02;
constexpr double kBaselineQmeSeconds = 1.0;
constexpr double kBaselineQleSeconds = 30.0;
constexpr double kCrossSolverTol = 5e-3;
constexpr double kCrossSolverSeconds = 600.0;
constexpr double kOraclePowerTol = 1e-4;
constexpr double kOracleMomentTol = 1e-5;
constexpr int kOracleRandomNetworks = 20;
constexpr double kOracleRtol = 1e-10;
constexpr double kNonreciprocityFactor = 10.0;
constexpr double kReciprocalTol = 1e-9;
constexpr double kSlopeTarget = 2.0;
constexpr double kSlopeTol = 0.1;
constexpr double kTrackTol = 0.02;     // PA1/PA2 relative error on P14 that still counts as tracking
constexpr double kClosedFormTol = 0.15;
constexpr double kQmeConservationTol = 1e-10;
constexpr double kQuadTol = 1e-6;
constexpr double kTruncationTol = 1e-3;
constexpr double kAntisymmetryTol = 1e-6;
constexpr double kPropertySeconds = 900.0;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), s);
    std::istringstream lines(o.detail);
    for (std::string line; std::getline(lines, line);) {
        std::printf("       %s\n", line.c_str());
    }
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

double seconds_of(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ForwardBackward qme(double beta, double theta, int n = 15) {
    const auto [net, mod] = chain(beta, theta);
    RunSettings s;
    s.n_max = n;
    return run_forward_backward(net, mod, Method::qme, s);
}

ForwardBackward qle(double beta, double theta, int n = 10) {
    const auto [net, mod] = chain(beta, theta);
    RunSettings s;
    s.n_max = n;
    s.quad_tol = kQuadTol;
    return run_forward_backward(net, mod, Method::qle, s);
}

Outcome ac1_baseline() {
    ForwardBackward a;
    ForwardBackward b;
    const double tq = seconds_of([&] { a = qme(0.0, 0.0); });
    const double tl = seconds_of([&] { b = qle(0.0, 0.0); });
    double worst = 0.0;
    for (double p : {a.P_fwd, a.P_bwd, b.P_fwd, b.P_bwd}) {
        worst = std::max(worst, std::abs(p / kReferenceP0 - 1.0));
    }
    const bool pass = worst <= kBaselineTol && tq < kBaselineQmeSeconds && tl < kBaselineQleSeconds;
    return {pass, fmt("qme P14=%.6e P41=%.6e W (%.3f s); qle P14=%.6e P41=%.6e W (%.3f s)\n"
                      "max deviation from 5.88e-22 W: %.3f%% (limit %.0f%%)",
                      a.P_fwd, a.P_bwd, tq, b.P_fwd, b.P_bwd, tl, 100 * worst, 100 * kBaselineTol)};
}

Outcome ac2_cross_solver() {
    double worst = 0.0;
    std::string detail;
    const double t = seconds_of([&] {
        for (double beta : {0.0, 0.02, 0.04, 0.06}) {
            for (double th : {0.1, 0.5}) {
                const ForwardBackward a = qme(beta, th * pi);
                const ForwardBackward b = qle(beta, th * pi);
                const double d = std::max(rel(a.P_fwd, b.P_fwd), rel(a.P_bwd, b.P_bwd));
                worst = std::max(worst, d);
                detail += fmt("beta=%.2f theta=%.1fpi: qme %.6e/%.6e qle %.6e/%.6e rel %.2e\n", beta, th, a.P_fwd,
                              a.P_bwd, b.P_fwd, b.P_bwd, d);
            }
        }
    });
    detail += fmt("max relative deviation %.2e (limit %.1e), total %.1f s", worst, kCrossSolverTol, t);
    return {worst <= kCrossSolverTol && t < kCrossSolverSeconds, detail};
}

Outcome ac3_oracle() {
    std::string detail;
    double worst_p = 0.0;
    const std::vector<std::pair<double, double>> points{{0.02, 0.1}, {0.04, 0.5}, {0.06, 0.5}};
    for (const auto& [beta, th] : points) {
        const auto [net, mod] = chain(beta, th * pi);
        RunSettings s;
        s.oracle_rtol = kOracleRtol;
        const ForwardBackward o = run_forward_backward(net, mod, Method::oracle, s);
        const ForwardBackward q = qme(beta, th * pi);
        const double d = std::max(rel(o.P_fwd, q.P_fwd), rel(o.P_bwd, q.P_bwd));
        worst_p = std::max(worst_p, d);
        detail += fmt("beta=%.2f theta=%.1fpi: oracle %.8e/%.8e qme %.8e/%.8e rel %.2e\n", beta, th, o.P_fwd,
                      o.P_bwd, q.P_fwd, q.P_bwd, d);
    }
    std::mt19937 rng(20240601);
    double worst_m = 0.0;
    for (int i = 0; i < kOracleRandomNetworks; ++i) {
        const auto r = random_network(rng, 3);
        const Eigen::VectorXcd avg = cycle_average(evolve_to_cycle(r.net, r.mod, kOracleRtol));
        const Eigen::VectorXcd ref = solve_fourier(r.net, r.mod, TruncationOrder(20), occupations(r.net)).block(0);
        worst_m = std::max(worst_m, (avg - ref).norm() / ref.norm());
    }
    detail += fmt("powers: max rel %.2e (limit %.0e); %d random networks: max moment rel %.2e (limit %.0e)",
                  worst_p, kOraclePowerTol, kOracleRandomNetworks, worst_m, kOracleMomentTol);
    return {worst_p <= kOraclePowerTol && worst_m <= kOracleMomentTol, detail};
}

Outcome ac4_nonreciprocity() {
    const ForwardBackward on = qme(0.05, 0.5 * pi);
    const double E = rectification(on.P_fwd, on.P_bwd);
    bool pass = std::abs(E) > kNonreciprocityFactor * kCrossSolverTol;
    std::string detail = fmt("beta=0.05 theta=+pi/2: P14=%.6e P41=%.6e E=%+.6f (sign recorded: %s favoured)\n",
                             on.P_fwd, on.P_bwd, E, E > 0 ? "1->4" : "4->1");
    const std::vector<std::pair<double, double>> reciprocal{{0.05, 0.0}, {0.05, 1.0}, {0.0, 0.5}};
    for (const auto& [beta, th] : reciprocal) {
        const ForwardBackward r = qme(beta, th * pi);
        const double e = rectification(r.P_fwd, r.P_bwd);
        pass = pass && std::abs(e) <= kReciprocalTol;
        detail += fmt("beta=%.2f theta=%.1fpi: |E|=%.2e (limit %.0e)\n", beta, th, std::abs(e), kReciprocalTol);
    }
    for (double beta : {0.02, 0.04, 0.06}) {
        const ForwardBackward a = qme(beta, 0.1 * pi);
        const ForwardBackward b = qme(beta, 0.5 * pi);
        const double sep_a = std::abs(a.P_fwd - a.P_bwd);
        const double sep_b = std::abs(b.P_fwd - b.P_bwd);
        pass = pass && sep_b > sep_a;
        detail += fmt("beta=%.2f: |P14-P41| theta=0.5pi %.3e > theta=0.1pi %.3e\n", beta, sep_b, sep_a);
    }
    detail.pop_back();
    return {pass, detail};
}

Outcome ac5_perturbation() {
    std::string detail;
    // beta^2 scaling
    std::vector<double> xs;
    std::vector<double> ys;
    for (double beta = 0.002; beta <= 0.01 + 1e-12; beta += 0.002) {
        const ForwardBackward r = qme(beta, 0.5 * pi);
        xs.push_back(std::log(beta));
        ys.push_back(std::log(std::abs(r.P_fwd - r.P_bwd)));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool slope_ok = std::abs(slope - kSlopeTarget) <= kSlopeTol;
    detail += fmt("log-log slope of |P14-P41| on beta in [0.002, 0.01]: %.4f (target 2.0 +- 0.1)\n", slope);

    // tracking range of PA1 versus PA2
    double range1 = 0.0;
    double range2 = 0.0;
    bool ok1 = true;
    bool ok2 = true;
    for (int i = 1; i <= 12; ++i) {
        const double beta = 0.005 * i;
        const auto [net, mod] = chain(beta, 0.5 * pi);
        const double exact = qme(beta, 0.5 * pi).P_fwd;
        const double p1 = power_second_order(net, mod, PerturbationVariant::matrix_inverse, 0, 3, T_hot).forward;
        const double p2 = power_second_order(net, mod, PerturbationVariant::neumann, 0, 3, T_hot).forward;
        ok1 = ok1 && rel(p1, exact) <= kTrackTol;
        ok2 = ok2 && rel(p2, exact) <= kTrackTol;
        range1 = ok1 ? beta : range1;
        range2 = ok2 ? beta : range2;
    }
    const bool range_ok = range1 > range2;
    detail += fmt("P14 tracked within %.0f%% up to beta=%.3f (PA1, full inverse) vs %.3f (PA2, expansion)\n",
                  100 * kTrackTol, range1, range2);

    // closed forms at beta = 0.02
    const auto [net, mod] = chain(0.02, 0.5 * pi);
    const ForwardBackward ex = qme(0.02, 0.5 * pi);
    const double exact = ex.P_fwd - ex.P_bwd;
    const PerturbationResult pr = perturbation_summary(net, mod, T_hot);
    const double cross = rel(pr.deltaP_closedform, pr.deltaP_closedform_via_N14);
    const double err_signed = std::abs(pr.deltaP_closedform / exact - 1.0);
    const double err_mag = std::abs(std::abs(pr.deltaP_closedform) / std::abs(exact) - 1.0);
    const bool closed_ok = err_signed <= kClosedFormTol;
    detail += fmt("beta=0.02 theta=pi/2: exact dP=%.6e, weak-coupling form %.6e, via Delta N14 %.6e W\n", exact,
                  pr.deltaP_closedform, pr.deltaP_closedform_via_N14);
    detail += fmt("closed-form cross-check: relative difference %.1e (identical)\n", cross);
    detail += fmt("closed vs exact: signed error %.3f, magnitude error %.3f (limit %.2f); sign %s\n", err_signed,
                  err_mag, kClosedFormTol, pr.deltaP_closedform * exact > 0 ? "agrees" : "OPPOSITE");
    {
        const auto [n2, m2] = chain(0.002, 0.5 * pi);
        const ForwardBackward e2 = qme(0.002, 0.5 * pi);
        const PerturbationResult p2 = perturbation_summary(n2, m2, T_hot);
        detail += fmt("beta=0.002: closed/exact = %+.4f (magnitude converges, sign flipped)", p2.deltaP_closedform /
                                                                                            (e2.P_fwd - e2.P_bwd));
    }
    return {slope_ok && range_ok && closed_ok, detail};
}

Outcome ac6_conservation() {
    std::string detail;
    bool pass = true;
    const PhysicalConstants c;
    const double scale_ref = c.hbar * omega0 * 2.0 * kappa * occupation(T_hot, omega0);
    double w_qme = 0, w_qle = 0, w_orc = 0;
    for (double beta : {0.0, 0.02, 0.04, 0.06}) {
        for (double th : {0.1, 0.5}) {
            const auto [net, mod] = chain(beta, th * pi);
            for (std::size_t src : {std::size_t{0}, std::size_t{3}}) {
                const ResonatorNetwork hot = with_single_hot_bath(net, src, T_hot);
                const auto k = static_cast<Eigen::Index>(src);
                const PowerMatrix a = power_matrix(hot, mod, TruncationOrder(15));
                const double ra = std::abs(a.P_em[k] - a.P.row(k).sum()) / a.P_em[k];
                w_qme = std::max(w_qme, ra);
                const PowerMatrix b = langevin_power_matrix(hot, mod, TruncationOrder(10), kQuadTol);
                const double rb = std::abs(b.P_em[k] - b.P.row(k).sum()) / b.P_em[k];
                w_qle = std::max(w_qle, rb);
                pass = pass && ra <= 3 * kQmeConservationTol && rb <= 3 * kQuadTol;
            }
            if (th == 0.5) {
                OracleOptions o;
                o.source = 0;
                const ResonatorNetwork hot = with_single_hot_bath(net, 0, T_hot);
                const PowerRow r = cycle_average_power(evolve_to_cycle(hot, mod, kOracleRtol, 2000, o), hot, 0);
                // the oracle controls occupations to rtol, i.e. powers on the scale hbar w 2 kappa n
                const double ro = std::abs(r.P_em - r.P.sum()) / scale_ref;
                w_orc = std::max(w_orc, ro);
                pass = pass && ro <= 3 * kOracleRtol;
            }
        }
    }
    detail += fmt("qme: max |P_em - sum P| / P_em = %.2e (limit %.0e)\n", w_qme, 3 * kQmeConservationTol);
    detail += fmt("qle: max |P_em - sum P| / P_em = %.2e (limit %.0e = 3 quad_tol)\n", w_qle, 3 * kQuadTol);
    detail += fmt("oracle: max |P_em - sum P| / (hbar w 2 kappa n) = %.2e (limit %.0e = 3 rtol)", w_orc,
                  3 * kOracleRtol);
    return {pass, detail};
}

Outcome ac7_properties() {
    std::string detail;
    bool pass = true;
    const double t = seconds_of([&] {
        std::mt19937 rng(77);
        // Fourier reality pairing
        double pairing = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto r = random_network(rng, 3);
            const FourierSolution sol = solve_fourier(r.net, r.mod, TruncationOrder(8), occupations(r.net));
            const MomentIndexMap idx(r.net.size());
            for (int n = -8; n <= 8; ++n) {
                for (std::size_t k = 0; k < r.net.size(); ++k) {
                    for (std::size_t l = 0; l < r.net.size(); ++l) {
                        pairing = std::max(pairing, std::abs(sol.coeff(n, idx.index(k, l)) -
                                                             std::conj(sol.coeff(-n, idx.index(l, k)))) /
                                                        sol.coeffs.norm());
                    }
                }
            }
        }
        pass = pass && pairing <= 1e-12;
        detail += fmt("reality pairing: max %.1e (limit 1e-12)\n", pairing);

        // spectral positivity
        double most_negative = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto r = random_network(rng, 3);
            for (int j = -20; j <= 20; ++j) {
                const double w = r.net.omega[0] * (1.0 + 0.005 * j);
                most_negative = std::min(most_negative, spectral_kernel(r.net, r.mod, w, TruncationOrder(6)).minCoeff());
            }
        }
        pass = pass && most_negative >= 0.0;
        detail += fmt("spectral positivity: min kernel %.1e (>= 0)\n", most_negative);

        // gauge invariance
        double gauge = 0.0;
        for (double beta : {0.02, 0.05}) {
            const auto [net, mod] = chain(beta, 0.3 * pi);
            ModulationProtocol shifted = mod;
            shifted.theta.array() += 0.77;
            const ForwardBackward a = run_forward_backward(net, mod, Method::qme);
            const ForwardBackward b = run_forward_backward(net, shifted, Method::qme);
            gauge = std::max({gauge, rel(a.P_fwd, b.P_fwd), rel(a.P_bwd, b.P_bwd)});
        }
        pass = pass && gauge <= 1e-10;
        detail += fmt("global phase invariance: max rel %.1e (limit 1e-10)\n", gauge);

        // E antisymmetry
        double anti = 0.0;
        for (double beta : {0.01, 0.03, 0.05}) {
            for (double th = 0.05; th < 1.0; th += 0.1) {
                const ForwardBackward p = qme(beta, th * pi);
                const ForwardBackward m = qme(beta, -th * pi);
                anti = std::max(anti, std::abs(rectification(p.P_fwd, p.P_bwd) + rectification(m.P_fwd, m.P_bwd)));
            }
        }
        pass = pass && anti <= kAntisymmetryTol;
        detail += fmt("E(theta) + E(-theta): max %.1e (limit %.0e)\n", anti, kAntisymmetryTol);

        // truncation convergence
        double trunc = 0.0;
        for (double beta : {0.02, 0.04, 0.06}) {
            for (double th : {0.1, 0.5}) {
                const ForwardBackward a = qme(beta, th * pi, 15);
                const ForwardBackward b = qme(beta, th * pi, 17);
                trunc = std::max({trunc, rel(a.P_fwd, b.P_fwd), rel(a.P_bwd, b.P_bwd)});
                const ForwardBackward c = qle(beta, th * pi, 10);
                const ForwardBackward d = qle(beta, th * pi, 12);
                trunc = std::max({trunc, rel(c.P_fwd, d.P_fwd), rel(c.P_bwd, d.P_bwd)});
            }
        }
        pass = pass && trunc < kTruncationTol;
        detail += fmt("n_max -> n_max + 2 (qme 15, qle 10): max rel change %.1e (limit %.0e)\n", trunc,
                      kTruncationTol);
    });
    pass = pass && t < kPropertySeconds;
    detail += fmt("property runtime %.1f s (limit %.0f s)", t, kPropertySeconds);
    return {pass, detail};
}

} // namespace

int main() {
    report("AC1 baseline power 5.88e-22 W (qme and qle)", ac1_baseline);
    report("AC2 qme/qle equivalence over beta x theta grid", ac2_cross_solver);
    report("AC3 time-domain oracle equivalence", ac3_oracle);
    report("AC4 nonreciprocity and mirror symmetry", ac4_nonreciprocity);
    report("AC5 perturbation theory", ac5_perturbation);
    report("AC6 power conservation", ac6_conservation);
    report("AC7 property suites", ac7_properties);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
