#pragma once

#include "molpricer/discretization.hpp"
#include "molpricer/grid.hpp"
#include "molpricer/linalg.hpp"
#include "molpricer/option.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mol {

/// Payoff sampled on the mesh: interior nodes plus the two boundary nodes.
struct PayoffSamples {
    Vector interior;
    double left = 0.0;  ///< phi(0)
    double right = 0.0; ///< phi(L)
};

PayoffSamples payoff_vector(const OptionSpec& spec, const Mesh& mesh);

/// zeta^{-1} (E - I) F, the response to the frozen boundary values, computed
/// with a banded solve.
Vector boundary_response(const BoundaryVector& f, const DenseMatrix& propagator, const SystemMatrices& sys);

/// E u_init + zeta^{-1} (E - I) F for a precomputed propagator E = e^{dtau zeta}.
Vector advance(const Vector& u_init, const BoundaryVector& f, const DenseMatrix& propagator,
               const SystemMatrices& sys);

struct IntervalSolution {
    Vector values;
    DenseMatrix propagator; ///< e^{dtau zeta}, kept for the Greeks
};

/// Exact solution of dU/dtau = zeta U + F over [0, dtau] with F frozen at the
/// given boundary values.
IntervalSolution solve_interval(const Vector& u_init, double u_left, double u_right, double dtau,
                                const SystemMatrices& sys);

/// One piece [tau_begin, tau_end) of the backward recursion, with the initial
/// condition after the exercise reset and the boundary values frozen for it.
struct ExerciseInterval {
    double tau_begin = 0.0;
    double tau_end = 0.0;
    Vector initial;
    double u_left = 0.0;
    double u_right = 0.0;
};

/// Interval boundaries 0 = tau_0 < tau_1 < ... < tau_E = T, with
/// tau_e = T - t_{E-e}.
std::vector<double> exercise_interval_boundaries(const OptionSpec& spec);

/// Option values on the interior nodes at the requested times to maturity.
struct ValueSurface {
    std::shared_ptr<const Mesh> mesh;
    std::shared_ptr<const SystemMatrices> system;
    std::vector<ExerciseInterval> intervals;
    std::vector<double> times;               ///< tau, in request order
    std::vector<Vector> values;              ///< one interior vector per time
    std::vector<std::size_t> interval_index; ///< interval each time falls in

    /// Index of tau in times (matched to 1e-12 relative); DomainError otherwise.
    std::size_t time_index(double tau) const;
};

/// Interval-by-interval exact solution with the exercise reset
/// u = max(phi, u^-) applied at every exercise date before maturity.
/// Times are tau = T - t. A report time that falls exactly on an exercise
/// date returns the value after the reset. Intervals of equal width share
/// one propagator.
ValueSurface solve_bermudan(const OptionSpec& spec, const MarketParams& params, const Mesh& mesh,
                            std::span<const double> report_times);

/// Value at spot s and time tau: the node value when s is a node, linear
/// interpolation between neighbouring nodes otherwise (boundary nodes use
/// the frozen boundary values of the interval).
double value_at(const ValueSurface& surface, double s, double tau);

} // namespace mol
