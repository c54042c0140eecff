#pragma once

#include "molpricer/grid.hpp"
#include "molpricer/linalg.hpp"

#include <cstddef>
#include <vector>

namespace mol {

/// Coefficients of the first and last stencil rows that reach the boundary
/// nodes x_0 and x_{M+1}. They are not part of any band; the boundary vector
/// and the stencil consistency checks consume them.
struct BoundaryColumns {
    double alpha_left = 0.0;  ///< alpha_{-1}: diffusion weight of x_0 in row 1
    double b_left = 0.0;      ///< b_1: convection weight of x_0 in row 1 (enters with a minus sign)
    double alpha_right = 0.0; ///< alpha_M: diffusion weight of x_{M+1} in row M
    double b_right = 0.0;     ///< b_M
    double d_left = 0.0;      ///< d_1 (enters D with a minus sign)
    double d_right = 0.0;     ///< d_M
    double d2_left = 0.0;     ///< second-difference weight of x_0 in row 1
    double d2_right = 0.0;    ///< second-difference weight of x_{M+1} in row M
};

/// Semi-discrete Black-Scholes operators on the interior nodes.
///
///   A    sigma^2 x^2 / 2 times the second difference (gamma on the diagonal,
///        alpha_{-j} / alpha_j off it)
///   B    r x times the centred first difference
///   C    -r I
///   D    centred first difference (Delta)
///   D2   non-uniform second difference (Gamma)
///   zeta A + B + C
struct SystemMatrices {
    TridiagonalMatrix A;
    TridiagonalMatrix B;
    TridiagonalMatrix C;
    TridiagonalMatrix D;
    TridiagonalMatrix D2;
    TridiagonalMatrix zeta;
    BoundaryColumns boundary;
    /// Interior node positions x_1..x_M.
    std::vector<double> x;
    double sigma = 0.0;
    double rate = 0.0;

    std::size_t dim() const { return zeta.dim(); }
};

/// Constant inhomogeneous term of dU/dtau = zeta U + F, carrying the frozen
/// boundary values. Only the first and last entries can be nonzero.
struct BoundaryVector {
    std::size_t dim = 0;
    double first = 0.0;
    double last = 0.0;
    double u_left = 0.0;
    double u_right = 0.0;

    Vector to_dense() const;
};

/// Assembles A, B, C, D, D2 and zeta over the interior nodes of mesh.
/// Throws DomainError for sigma <= 0 or a non-positive spacing.
SystemMatrices build_system(const Mesh& mesh, double sigma, double rate);

/// F with first entry (alpha_{-1} - b_1) u_left and last entry
/// (alpha_M + b_M) u_right. For M == 1 both contributions share one entry.
BoundaryVector build_boundary_vector(const Mesh& mesh, const SystemMatrices& sys, double u_left,
                                     double u_right);

/// Same, using the boundary weights already stored in sys.
BoundaryVector build_boundary_vector(const SystemMatrices& sys, double u_left, double u_right);

} // namespace mol
