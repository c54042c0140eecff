#pragma once

#include "molpricer/discretization.hpp"
#include "molpricer/grid.hpp"
#include "molpricer/linalg.hpp"
#include "molpricer/option.hpp"
#include "molpricer/solver.hpp"

#include <memory>

namespace mol {

/// Operator ordering used for the boundary-vector terms of vega and rho.
///
/// Differentiating U = E U0 + zeta^{-1}(E - I) F with the derivative of the
/// exponential taken as tau * E * P (P = d zeta / d param, i.e. treating P
/// and zeta as commuting) leaves the F-terms in one of two equivalent forms:
///
///   derivative_outside:  P zeta^{-1} [tau E - zeta^{-1}(E - I)] F
///   derivative_inside:   -zeta^{-1} P zeta^{-1}(E - I) F + tau zeta^{-1} E P F
///
/// They agree when P and zeta commute. On a graded mesh the discrete
/// commutator is large at the truncation node where F lives, and only
/// derivative_outside stays close to the exact sensitivity there.
enum class SensitivityForm { derivative_outside, derivative_inside };

struct GreeksSurface {
    std::shared_ptr<const Mesh> mesh;
    double tau = 0.0;
    Vector delta;
    Vector gamma;
    Vector theta; ///< d/dt (calendar time), i.e. -d/dtau
    Vector vega;
    Vector rho;
};

/// D u: centred first difference; the end rows drop the boundary neighbour.
Vector delta(const Vector& u, const SystemMatrices& sys);

/// D2 u: non-uniform second difference; the end rows drop the boundary neighbour.
Vector gamma(const Vector& u, const SystemMatrices& sys);

/// D (D u): the algebraic square of the first difference. Wider and less
/// accurate than gamma(); kept for comparison.
Vector gamma_first_difference_squared(const Vector& u, const SystemMatrices& sys);

/// -zeta E u0 - E F with E = e^{tau zeta}.
Vector theta(const Vector& u0, const BoundaryVector& f, const DenseMatrix& expm_tau, const SystemMatrices& sys);

/// d zeta / d sigma = (2 / sigma) A.
TridiagonalMatrix zeta_sigma_derivative(const SystemMatrices& sys);

/// d F / d sigma: only the alpha parts of F depend on sigma.
BoundaryVector boundary_sigma_derivative(const SystemMatrices& sys, double u_left, double u_right);

/// d zeta / d r = B' + C' with B' = diag(x) D and C' = -I.
TridiagonalMatrix zeta_rate_derivative(const SystemMatrices& sys);

/// d F / d r: -x_1 d_1 u_left first, x_M d_M u_right last.
BoundaryVector boundary_rate_derivative(const SystemMatrices& sys, double u_left, double u_right);

/// Sensitivity of U(tau) to a parameter p given dzeta = d zeta / dp and
/// df = dF / dp:
///   tau E dzeta u0 + [F-terms per form] + zeta^{-1}(E - I) df.
/// Every zeta^{-1} is a banded solve.
Vector parameter_sensitivity(const Vector& u0, const BoundaryVector& f, double tau, const DenseMatrix& expm_tau,
                             const SystemMatrices& sys, const TridiagonalMatrix& dzeta, const BoundaryVector& df,
                             SensitivityForm form = SensitivityForm::derivative_outside);

Vector vega(const Vector& u0, const BoundaryVector& f, double tau, const DenseMatrix& expm_tau,
            const SystemMatrices& sys, SensitivityForm form = SensitivityForm::derivative_outside);
Vector vega(const Vector& u0, const BoundaryVector& f, double tau, const SystemMatrices& sys,
            SensitivityForm form = SensitivityForm::derivative_outside);

Vector rho(const Vector& u0, const BoundaryVector& f, double tau, const DenseMatrix& expm_tau,
           const SystemMatrices& sys, SensitivityForm form = SensitivityForm::derivative_outside);
Vector rho(const Vector& u0, const BoundaryVector& f, double tau, const SystemMatrices& sys,
           SensitivityForm form = SensitivityForm::derivative_outside);

/// All five Greeks inside one exercise interval at tau = interval.tau_begin + dtau,
/// sharing one matrix exponential.
GreeksSurface interval_greeks(std::shared_ptr<const Mesh> mesh, const SystemMatrices& sys,
                              const ExerciseInterval& interval, double dtau,
                              SensitivityForm form = SensitivityForm::derivative_outside);

/// Greeks at time to maturity tau. For Bermudan schedules they are taken
/// within the interval containing tau, from that interval's initial
/// condition; the dependence of earlier exercise resets on sigma and r is
/// not propagated.
GreeksSurface greeks_surface(const OptionSpec& spec, const MarketParams& params, const Mesh& mesh, double tau,
                             SensitivityForm form = SensitivityForm::derivative_outside);

} // namespace mol
