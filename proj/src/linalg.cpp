#include "synheat/linalg.hpp"

#include "synheat/errors.hpp"

#include <string>

namespace synheat {

namespace {

Eigen::PartialPivLU<Eigen::MatrixXcd> checked_lu(const Eigen::MatrixXcd& A, const char* what) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    // rcond() is meaningless once a pivot is exactly zero, so look at the pivots too
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.size() ? pivots.minCoeff() / pivots.maxCoeff() : 1.0;
    const double rc = pivot_ratio >= kSingularRcond ? lu.rcond() : pivot_ratio;
    if (!(rc >= kSingularRcond)) {
        throw SingularMatrixError(std::string(what) + ": matrix is numerically singular (rcond = " +
                                  std::to_string(rc) + ")");
    }
    return lu;
}

} // namespace

BlockTridiagonal::BlockTridiagonal(std::size_t num_blocks, std::size_t block_size)
    : block_size_(block_size) {
    const auto b = static_cast<Eigen::Index>(block_size);
    diag_.assign(num_blocks, Eigen::MatrixXcd::Zero(b, b));
    if (num_blocks > 1) {
        lower_.assign(num_blocks - 1, Eigen::MatrixXcd::Zero(b, b));
        upper_.assign(num_blocks - 1, Eigen::MatrixXcd::Zero(b, b));
    }
}

BlockTridiagonal BlockTridiagonal::transpose() const {
    BlockTridiagonal t(num_blocks(), block_size_);
    for (std::size_t i = 0; i < num_blocks(); ++i) {
        t.diag_[i] = diag_[i].transpose();
    }
    // (A^T) block (i, i+1) is (A block (i+1, i))^T.
    for (std::size_t i = 0; i + 1 < num_blocks(); ++i) {
        t.upper_[i] = lower_[i].transpose();
        t.lower_[i] = upper_[i].transpose();
    }
    return t;
}

Eigen::MatrixXcd BlockTridiagonal::to_dense() const {
    const auto b = static_cast<Eigen::Index>(block_size_);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim(), dim());
    for (std::size_t i = 0; i < num_blocks(); ++i) {
        const auto r = static_cast<Eigen::Index>(i) * b;
        A.block(r, r, b, b) = diag_[i];
        if (i > 0) {
            A.block(r, r - b, b, b) = lower(i);
        }
        if (i + 1 < num_blocks()) {
            A.block(r, r + b, b, b) = upper(i);
        }
    }
    return A;
}

Eigen::MatrixXcd BlockTridiagonal::solve(const Eigen::MatrixXcd& rhs) const {
    const std::size_t m = num_blocks();
    const auto b = static_cast<Eigen::Index>(block_size_);
    const Eigen::Index cols = rhs.cols();

    std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> piv;
    piv.reserve(m);
    Eigen::MatrixXcd y = rhs;

    // Forward sweep: Schur complements S_i = D_i - L_i S_{i-1}^{-1} U_{i-1}.
    piv.push_back(checked_lu(diag_[0], "block-tridiagonal solve"));
    for (std::size_t i = 1; i < m; ++i) {
        const auto r = static_cast<Eigen::Index>(i) * b;
        const Eigen::MatrixXcd W = piv.back().solve(upper(i - 1));
        const Eigen::MatrixXcd S = diag_[i] - lower(i) * W;
        y.middleRows(r, b) -= lower(i) * piv.back().solve(y.middleRows(r - b, b));
        piv.push_back(checked_lu(S, "block-tridiagonal solve"));
    }

    // Back substitution.
    Eigen::MatrixXcd x(dim(), cols);
    {
        const auto r = static_cast<Eigen::Index>(m - 1) * b;
        x.middleRows(r, b) = piv[m - 1].solve(y.middleRows(r, b));
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        const auto r = static_cast<Eigen::Index>(i) * b;
        x.middleRows(r, b) = piv[i].solve(y.middleRows(r, b) - upper(i) * x.middleRows(r + b, b));
    }
    return x;
}

Eigen::MatrixXcd solve_dense(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& rhs) {
    return checked_lu(A, "dense solve").solve(rhs);
}

Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& A) {
    return checked_lu(A, "matrix inverse").inverse();
}

} // namespace synheat
