// linalg.hpp: block-tridiagonal complex systems shared by both Floquet solvers

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace synheat {

/// Blocks below this reciprocal condition estimate are treated as singular.
inline constexpr double kSingularRcond = 1e-14;

/// Square block-tridiagonal matrix with equally sized square blocks.
/// lower(i) couples block row i to column i-1, upper(i) couples row i to
/// column i+1.
class BlockTridiagonal {
public:
    BlockTridiagonal(std::size_t num_blocks, std::size_t block_size);

    std::size_t num_blocks() const { return diag_.size(); }
    std::size_t block_size() const { return block_size_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(num_blocks() * block_size_); }

    Eigen::MatrixXcd& diag(std::size_t i) { return diag_[i]; }
    const Eigen::MatrixXcd& diag(std::size_t i) const { return diag_[i]; }
    Eigen::MatrixXcd& lower(std::size_t i) { return lower_[i - 1]; }
    const Eigen::MatrixXcd& lower(std::size_t i) const { return lower_[i - 1]; }
    Eigen::MatrixXcd& upper(std::size_t i) { return upper_[i]; }
    const Eigen::MatrixXcd& upper(std::size_t i) const { return upper_[i]; }

    BlockTridiagonal transpose() const;
    Eigen::MatrixXcd to_dense() const;

    /// Block-Thomas elimination (block LU without inter-block pivoting; each
    /// Schur complement is factored with partial pivoting).
    /// Throws SingularMatrixError if a Schur complement is singular.
    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;

private:
    std::size_t block_size_;
    std::vector<Eigen::MatrixXcd> diag_;
    std::vector<Eigen::MatrixXcd> lower_;
    std::vector<Eigen::MatrixXcd> upper_;
};

/// Dense LU with partial pivoting; throws SingularMatrixError when the
/// reciprocal condition estimate falls below kSingularRcond.
Eigen::MatrixXcd solve_dense(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& rhs);

/// Dense inverse with the same singularity guard as solve_dense.
Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& A);

enum class SolvePath { block_thomas, dense };

} // namespace synheat
