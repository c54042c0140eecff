#include "molpricer/greeks.hpp"

#include "molpricer/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mol {

namespace {

// E F, using that F has only two nonzero entries.
Vector propagate_boundary(const BoundaryVector& f, const DenseMatrix& expm_tau)
{
    const auto m = expm_tau.cols();
    return expm_tau.col(0) * f.first + expm_tau.col(m - 1) * f.last;
}

void check_dims(const Vector& u, const SystemMatrices& sys)
{
    if (static_cast<std::size_t>(u.size()) != sys.dim())
        throw DomainError("value vector does not match system dimension");
}

} // namespace

Vector delta(const Vector& u, const SystemMatrices& sys)
{
    check_dims(u, sys);
    return sys.D * u;
}

Vector gamma(const Vector& u, const SystemMatrices& sys)
{
    check_dims(u, sys);
    return sys.D2 * u;
}

Vector gamma_first_difference_squared(const Vector& u, const SystemMatrices& sys)
{
    check_dims(u, sys);
    return sys.D * (sys.D * u);
}

Vector theta(const Vector& u0, const BoundaryVector& f, const DenseMatrix& expm_tau, const SystemMatrices& sys)
{
    check_dims(u0, sys);
    Vector out = -(sys.zeta * apply_dense(expm_tau, u0));
    out -= propagate_boundary(f, expm_tau);
    return out;
}

TridiagonalMatrix zeta_sigma_derivative(const SystemMatrices& sys)
{
    return sys.A.scaled(2.0 / sys.sigma);
}

BoundaryVector boundary_sigma_derivative(const SystemMatrices& sys, double u_left, double u_right)
{
    BoundaryVector df;
    df.dim = sys.dim();
    df.u_left = u_left;
    df.u_right = u_right;
    df.first = 2.0 / sys.sigma * sys.boundary.alpha_left * u_left;
    df.last = 2.0 / sys.sigma * sys.boundary.alpha_right * u_right;
    return df;
}

TridiagonalMatrix zeta_rate_derivative(const SystemMatrices& sys)
{
    TridiagonalMatrix out(sys.dim());
    for (std::size_t i = 0; i < out.sup.size(); ++i) {
        out.sup[i] = sys.x[i] * sys.D.sup[i];
        out.sub[i] = sys.x[i + 1] * sys.D.sub[i];
    }
    std::fill(out.diag.begin(), out.diag.end(), -1.0);
    return out;
}

BoundaryVector boundary_rate_derivative(const SystemMatrices& sys, double u_left, double u_right)
{
    BoundaryVector df;
    df.dim = sys.dim();
    df.u_left = u_left;
    df.u_right = u_right;
    df.first = -sys.x.front() * sys.boundary.d_left * u_left;
    df.last = sys.x.back() * sys.boundary.d_right * u_right;
    return df;
}

Vector parameter_sensitivity(const Vector& u0, const BoundaryVector& f, double tau, const DenseMatrix& expm_tau,
                             const SystemMatrices& sys, const TridiagonalMatrix& dzeta, const BoundaryVector& df,
                             SensitivityForm form)
{
    check_dims(u0, sys);
    Vector out = tau * apply_dense(expm_tau, dzeta * u0);

    const Vector response = boundary_response(f, expm_tau, sys);
    if (form == SensitivityForm::derivative_outside) {
        Vector inner = tau * solve_banded(sys.zeta, propagate_boundary(f, expm_tau));
        inner -= solve_banded(sys.zeta, response);
        out += dzeta * inner;
    } else {
        out -= solve_banded(sys.zeta, dzeta * response);
        out += tau * solve_banded(sys.zeta, apply_dense(expm_tau, dzeta * f.to_dense()));
    }

    out += boundary_response(df, expm_tau, sys);
    return out;
}

Vector vega(const Vector& u0, const BoundaryVector& f, double tau, const DenseMatrix& expm_tau,
            const SystemMatrices& sys, SensitivityForm form)
{
    return parameter_sensitivity(u0, f, tau, expm_tau, sys, zeta_sigma_derivative(sys),
                                 boundary_sigma_derivative(sys, f.u_left, f.u_right), form);
}

Vector vega(const Vector& u0, const BoundaryVector& f, double tau, const SystemMatrices& sys, SensitivityForm form)
{
    return vega(u0, f, tau, expm(tau, sys.zeta), sys, form);
}

Vector rho(const Vector& u0, const BoundaryVector& f, double tau, const DenseMatrix& expm_tau,
           const SystemMatrices& sys, SensitivityForm form)
{
    return parameter_sensitivity(u0, f, tau, expm_tau, sys, zeta_rate_derivative(sys),
                                 boundary_rate_derivative(sys, f.u_left, f.u_right), form);
}

Vector rho(const Vector& u0, const BoundaryVector& f, double tau, const SystemMatrices& sys, SensitivityForm form)
{
    return rho(u0, f, tau, expm(tau, sys.zeta), sys, form);
}

GreeksSurface interval_greeks(std::shared_ptr<const Mesh> mesh, const SystemMatrices& sys,
                              const ExerciseInterval& interval, double dtau, SensitivityForm form)
{
    const DenseMatrix propagator = expm(dtau, sys.zeta);
    const BoundaryVector f = build_boundary_vector(sys, interval.u_left, interval.u_right);
    const Vector u = advance(interval.initial, f, propagator, sys);

    GreeksSurface out;
    out.mesh = std::move(mesh);
    out.tau = interval.tau_begin + dtau;
    out.delta = delta(u, sys);
    out.gamma = gamma(u, sys);
    out.theta = theta(interval.initial, f, propagator, sys);
    out.vega = vega(interval.initial, f, dtau, propagator, sys, form);
    out.rho = rho(interval.initial, f, dtau, propagator, sys, form);
    return out;
}

GreeksSurface greeks_surface(const OptionSpec& spec, const MarketParams& params, const Mesh& mesh, double tau,
                             SensitivityForm form)
{
    spec.validate();
    const double tol = 1e-12 * std::max(1.0, spec.maturity);
    if (!(tau >= -tol && tau <= spec.maturity + tol))
        throw DomainError("greeks: tau outside [0, T]");
    const auto taus = exercise_interval_boundaries(spec);
    std::size_t e = 0;
    while (e + 2 < taus.size() && tau >= taus[e + 1] - tol)
        ++e;

    // Solving to the interval start yields its post-reset initial condition.
    const double start = taus[e];
    const ValueSurface surface = solve_bermudan(spec, params, mesh, std::span<const double>(&start, 1));
    const ExerciseInterval& interval = surface.intervals[e];
    return interval_greeks(surface.mesh, *surface.system, interval, std::max(0.0, tau - start), form);
}

} // namespace mol
