#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace mol {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Square tridiagonal matrix in 3-band storage.
///
/// sub[i] is entry (i + 1, i), diag[i] is (i, i) and sup[i] is (i, i + 1).
struct TridiagonalMatrix {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;

    TridiagonalMatrix() = default;
    explicit TridiagonalMatrix(std::size_t dim);

    std::size_t dim() const { return diag.size(); }

    /// Throws DomainError when band lengths disagree or an entry is not finite.
    void validate() const;

    Vector operator*(const Vector& v) const;
    TridiagonalMatrix& operator+=(const TridiagonalMatrix& other);
    TridiagonalMatrix scaled(double factor) const;

    /// Maximum absolute column sum.
    double norm1() const;

    DenseMatrix to_dense() const;

    static TridiagonalMatrix identity(std::size_t dim);
};

TridiagonalMatrix operator+(TridiagonalMatrix lhs, const TridiagonalMatrix& rhs);

/// e^{tau * m} by scaling and squaring of the degree-13 diagonal Pade
/// approximant. tau must be non-negative; tau == 0 returns the identity
/// exactly. Throws OverflowError if the result is not finite and DomainError
/// for NaN input.
DenseMatrix expm(double tau, const TridiagonalMatrix& m);

/// Dense variant of expm used when the argument is already dense.
DenseMatrix expm(const DenseMatrix& a);

/// Solves m * y = rhs by Gaussian elimination with partial pivoting on the
/// band (the elimination fills one extra superdiagonal). Throws
/// SingularMatrixError when a pivot magnitude drops below 1e-300.
Vector solve_banded(const TridiagonalMatrix& m, const Vector& rhs);

/// Matrix-vector product with a dimension check.
Vector apply_dense(const DenseMatrix& m, const Vector& v);

} // namespace mol
