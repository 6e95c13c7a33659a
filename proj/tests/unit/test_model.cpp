#include <doctest.h>

#include "support.hpp"
#include "synheat/errors.hpp"
#include "synheat/model.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

using namespace synheat;
using namespace testing;

namespace {

bool has_message(const std::vector<Diagnostic>& d, Severity s, const std::string& fragment) {
    return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) {
        return x.severity == s && x.message.find(fragment) != std::string::npos;
    });
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("occupation matches the Bose-Einstein reference at 300 K") {
    CHECK(occupation(300.0, omega0) == doctest::Approx(n_300K).epsilon(1e-14));
    CHECK(occupation(0.0, omega0) == 0.0);
    CHECK_THROWS_AS(occupation(-1.0, omega0), std::domain_error);
    CHECK_THROWS_AS(occupation(300.0, 0.0), std::domain_error);
}

TEST_CASE("occupation approaches kB T / hbar omega at high temperature") {
    const PhysicalConstants c;
    const double T = 1e6;
    const double x = c.hbar * omega0 / (c.kB * T);
    CHECK(occupation(T, omega0) == doctest::Approx(1.0 / x - 0.5).epsilon(1e-6));
}

TEST_CASE("chain builder produces a Hermitian nearest-neighbour chain") {
    const auto [net, mod] = chain(0.02, 0.5 * std::numbers::pi);
    REQUIRE(net.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            const double expected = std::abs(i - j) == 1 ? g : 0.0;
            CHECK(std::abs(net.g(i, j) - cplx{expected, 0.0}) == 0.0);
        }
    }
    CHECK(mod.mask == std::vector<int>{0, 1, 1, 0});
    CHECK(validate(net, mod).empty());
}

TEST_CASE("eta values of the chain at theta = pi/2") {
    const auto [net, mod] = chain(0.02, 0.5 * std::numbers::pi);
    const cplx e{0.0, 1.0};
    CHECK(std::abs(mod.eta(0, 1) - cplx{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(mod.eta(0, 3)) < 1e-15);
    CHECK(std::abs(mod.eta(1, 3) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(mod.eta(2, 3) - e) < 1e-15);
    CHECK(std::abs(mod.eta(0, 2) + e) < 1e-15);
    CHECK(std::abs(mod.eta(1, 2) - (1.0 - e)) < 1e-15);
    CHECK(std::abs(mod.eta(2, 1) + mod.eta(1, 2)) < 1e-15);
}

TEST_CASE("validate reports each broken invariant") {
    auto [net, mod] = chain(0.02, 0.0);
    SUBCASE("non-positive damping") {
        net.kappa[1] = 0.0;
        CHECK(has_message(validate(net, mod), Severity::error, "kappa"));
        CHECK_THROWS_AS(require_valid(net, mod), ValidationError);
    }
    SUBCASE("non-Hermitian coupling when Hermiticity is requested") {
        net.g(0, 1) = cplx{g, 0.1 * g};
        CHECK(has_errors(validate(net, mod)));
        net.hermitian = false;
        CHECK_FALSE(has_errors(validate(net, mod)));
    }
    SUBCASE("mask entries other than 0 and 1") {
        mod.mask[0] = 2;
        CHECK(has_errors(validate(net, mod)));
    }
    SUBCASE("mismatched lengths") {
        mod.theta.resize(3);
        CHECK(has_errors(validate(net, mod)));
    }
    SUBCASE("negative temperature") {
        net.T[2] = -1.0;
        CHECK(has_errors(validate(net, mod)));
    }
    SUBCASE("strong modulation only warns") {
        mod.beta = 0.2 * omega0;
        const auto d = validate(net, mod);
        CHECK_FALSE(has_errors(d));
        CHECK(has_message(d, Severity::warning, "white-noise"));
    }
    SUBCASE("hot bath with fast modulation only warns") {
        net.T[0] = 300.0;
        const auto d = validate(net, mod);
        CHECK_FALSE(has_errors(d));
        CHECK(has_message(d, Severity::warning, "white-noise"));
    }
}

TEST_CASE("single hot bath copies the network") {
    const auto [net, mod] = chain(0.0, 0.0);
    const ResonatorNetwork hot = with_single_hot_bath(net, 3, 300.0);
    CHECK(hot.T[3] == 300.0);
    CHECK(hot.T[0] == 0.0);
    CHECK(hot.g.isApprox(net.g));
}

}
