#include <doctest.h>

#include "support.hpp"
#include "synheat/errors.hpp"
#include "synheat/linalg.hpp"

#include <random>

using namespace synheat;

TEST_SUITE("linalg") {

TEST_CASE("block Thomas solve agrees with dense LU on random diagonally dominant systems") {
    std::mt19937 rng(7);
    std::normal_distribution<double> n(0.0, 1.0);
    auto rnd = [&](int r, int c) {
        Eigen::MatrixXcd m(r, c);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < c; ++j) {
                m(i, j) = cplx{n(rng), n(rng)};
            }
        }
        return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const int blocks = 1 + trial % 7;
        const int bs = 1 + trial % 4;
        BlockTridiagonal A(blocks, bs);
        for (int i = 0; i < blocks; ++i) {
            A.diag(i) = rnd(bs, bs) + 8.0 * Eigen::MatrixXcd::Identity(bs, bs);
            if (i > 0) {
                A.lower(i) = rnd(bs, bs);
            }
            if (i + 1 < blocks) {
                A.upper(i) = rnd(bs, bs);
            }
        }
        const Eigen::MatrixXcd rhs = rnd(A.dim(), 3);
        const Eigen::MatrixXcd x = A.solve(rhs);
        const Eigen::MatrixXcd y = solve_dense(A.to_dense(), rhs);
        CHECK((x - y).norm() <= 1e-12 * y.norm());
        CHECK((A.to_dense() * x - rhs).norm() <= 1e-12 * rhs.norm());
        CHECK(A.transpose().to_dense().isApprox(A.to_dense().transpose(), 0.0));
    }
}

TEST_CASE("singular systems are rejected") {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3, 3);
    A(0, 0) = 1.0;
    CHECK_THROWS_AS(solve_dense(A, Eigen::VectorXcd::Ones(3)), SingularMatrixError);
    CHECK_THROWS_AS(checked_inverse(A), SingularMatrixError);
    BlockTridiagonal B(2, 2);
    CHECK_THROWS_AS(B.solve(Eigen::VectorXcd::Ones(4)), SingularMatrixError);
}

}
