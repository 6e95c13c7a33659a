// quadrature.hpp: global adaptive Gauss-Kronrod over the whole real line (internal)

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "synheat/errors.hpp"

namespace synheat::detail {

struct LineIntegral {
    double value{0.0};
    double error{0.0};
    int intervals{0};
};

/// Integrates f(x) over (-inf, inf) through x = center + width * tan(phi).
/// A spectrum made of Lorentzian-like peaks becomes bounded on the finite
/// phi range, so the tails are covered exactly rather than truncated.
/// Breakpoints (in x) seed the initial partition; the interval with the
/// largest error estimate is bisected until
///   error <= max(rel_tol * |value|, abs_tol).
template <class F>
LineIntegral integrate_real_line(F&& f, double center, double width, std::vector<double> breakpoints,
                                 double rel_tol, double abs_tol, int max_intervals = 4000) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    constexpr double half_pi = std::numbers::pi / 2.0;

    auto g = [&](double phi) {
        const double c = std::cos(phi);
        return f(center + width * std::tan(phi)) * width / (c * c);
    };

    std::vector<double> cuts{-half_pi, half_pi};
    for (double x : breakpoints) {
        cuts.push_back(std::atan((x - center) / width));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-12; }), cuts.end());

    struct Piece {
        double a, b, value, error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    auto evaluate = [&](double a, double b) {
        double err = 0.0;
        const double v = Rule::integrate(g, a, b, 0, 0.0, &err);
        return Piece{a, b, v, err};
    };

    std::priority_queue<Piece> heap;
    LineIntegral out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Piece p = evaluate(cuts[i], cuts[i + 1]);
        out.value += p.value;
        out.error += p.error;
        heap.push(p);
    }
    out.intervals = static_cast<int>(heap.size());

    auto converged = [&] { return out.error <= std::max(rel_tol * std::abs(out.value), abs_tol); };
    while (!converged()) {
        if (out.intervals >= max_intervals || !std::isfinite(out.value)) {
            throw QuadratureError("adaptive quadrature did not converge", out.value, out.error);
        }
        const Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Piece left = evaluate(worst.a, mid);
        const Piece right = evaluate(mid, worst.b);
        out.value += left.value + right.value - worst.value;
        out.error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++out.intervals;
    }
    // Recompute the sums to drop the drift of incremental updates.
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    out.value = v;
    out.error = e;
    return out;
}

} // namespace synheat::detail
