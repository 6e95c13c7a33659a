#include <doctest.h>

#include "support.hpp"
#include "synheat/errors.hpp"
#include "synheat/master_floquet.hpp"
#include "synheat/timedomain_oracle.hpp"

#include <numbers>
#include <random>
#include <sstream>

using namespace synheat;
using namespace testing;

TEST_SUITE("timedomain_oracle") {

TEST_CASE("static generator reproduces the Lyapunov steady state") {
    std::mt19937 rng(17);
    const auto r = random_network(rng, 3);
    ModulationProtocol mod = r.mod;
    mod.beta = 0.0;
    const MomentGenerator G = generator(r.net, mod, 0.0);
    const Eigen::VectorXcd y = solve_dense(G.G, Eigen::VectorXcd(-G.s));
    const Eigen::MatrixXcd C = lyapunov_moments(r.net, occupations(r.net));
    const MomentIndexMap idx(r.net.size());
    for (std::size_t k = 0; k < r.net.size(); ++k) {
        for (std::size_t l = 0; l < r.net.size(); ++l) {
            CHECK(std::abs(y[static_cast<Eigen::Index>(idx.index(k, l))] -
                           C(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))) <= 1e-10 * C.norm());
        }
    }
}

TEST_CASE("cycle averages match the Fourier solver on random networks") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = random_network(rng, 3);
        const auto samples = evolve_to_cycle(r.net, r.mod, 1e-11);
        const Eigen::VectorXcd avg = cycle_average(samples);
        const FourierSolution sol = solve_fourier(r.net, r.mod, TruncationOrder(20), occupations(r.net));
        const Eigen::VectorXcd ref = sol.block(0);
        CHECK((avg - ref).norm() <= 1e-5 * ref.norm());
    }
}

TEST_CASE("samples span exactly one period") {
    const auto [net, mod] = chain(0.03, 0.5 * std::numbers::pi);
    OracleOptions opts;
    opts.steps_per_period = 512;
    opts.source = 0;
    const auto samples = evolve_to_cycle(with_single_hot_bath(net, 0, T_hot), mod, 1e-9, 2000, opts);
    REQUIRE(samples.size() == 513);
    CHECK(samples.back().t - samples.front().t == doctest::Approx(2.0 * std::numbers::pi / mod.Omega));
}

TEST_CASE("unusable step sizes and budgets are reported") {
    const auto [net, mod] = chain(0.03, 0.5 * std::numbers::pi);
    const ResonatorNetwork hot = with_single_hot_bath(net, 0, T_hot);
    OracleOptions coarse;
    coarse.steps_per_period = 8;
    CHECK_THROWS_AS(evolve_to_cycle(hot, mod, 1e-9, 2000, coarse), ConvergenceError);
    CHECK_THROWS_AS(evolve_to_cycle(hot, mod, 1e-14, 2), ConvergenceError);
}

TEST_CASE("trajectory dump has one row per sample and moment") {
    const auto [net, mod] = chain(0.03, 0.5 * std::numbers::pi);
    OracleOptions opts;
    opts.steps_per_period = 64;
    const auto samples = evolve_to_cycle(with_single_hot_bath(net, 0, T_hot), mod, 1e-6, 2000, opts);
    std::ostringstream out;
    write_trajectory_csv(out, samples);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t_s,moment_index,re,im");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == samples.size() * 16);
}

}
