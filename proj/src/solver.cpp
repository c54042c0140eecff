#include "molpricer/solver.hpp"

#include "molpricer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace mol {

namespace {

// Propagators keyed by interval width. Widths produced by subtracting
// calendar dates agree only to rounding, hence the tolerance.
class PropagatorCache {
public:
    PropagatorCache(const SystemMatrices& sys, double time_scale) : sys_(sys), tol_(1e-12 * time_scale) {}

    const DenseMatrix& get(double dtau)
    {
        for (const auto& [width, matrix] : entries_) {
            if (std::abs(width - dtau) <= tol_)
                return matrix;
        }
        entries_.emplace_back(dtau, expm(dtau, sys_.zeta));
        return entries_.back().second;
    }

private:
    const SystemMatrices& sys_;
    double tol_;
    std::vector<std::pair<double, DenseMatrix>> entries_;
};

} // namespace

std::vector<double> exercise_interval_boundaries(const OptionSpec& spec)
{
    const auto& dates = spec.exercise_dates;
    std::vector<double> taus{0.0};
    for (std::size_t j = dates.size() - 1; j-- > 0;)
        taus.push_back(spec.maturity - dates[j]);
    taus.push_back(spec.maturity);
    return taus;
}

PayoffSamples payoff_vector(const OptionSpec& spec, const Mesh& mesh)
{
    const auto m = mesh.interior_size();
    PayoffSamples out;
    out.interior.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
        out.interior[static_cast<Eigen::Index>(i)] = evaluate(spec.payoff, mesh.node(i + 1));
    out.left = evaluate(spec.payoff, 0.0);
    out.right = evaluate(spec.payoff, mesh.length());
    return out;
}

Vector boundary_response(const BoundaryVector& f, const DenseMatrix& propagator, const SystemMatrices& sys)
{
    const auto m = static_cast<Eigen::Index>(sys.dim());
    if (propagator.rows() != m || propagator.cols() != m || static_cast<Eigen::Index>(f.dim) != m)
        throw DomainError("boundary response: dimension mismatch");
    // (E - I) F touches only the first and last columns of E.
    Vector rhs = propagator.col(0) * f.first + propagator.col(m - 1) * f.last;
    rhs -= f.to_dense();
    return solve_banded(sys.zeta, rhs);
}

Vector advance(const Vector& u_init, const BoundaryVector& f, const DenseMatrix& propagator,
               const SystemMatrices& sys)
{
    Vector out = apply_dense(propagator, u_init);
    out += boundary_response(f, propagator, sys);
    return out;
}

IntervalSolution solve_interval(const Vector& u_init, double u_left, double u_right, double dtau,
                                const SystemMatrices& sys)
{
    if (!(dtau >= 0.0))
        throw DomainError("interval width must be non-negative");
    if (static_cast<std::size_t>(u_init.size()) != sys.dim())
        throw DomainError("initial condition does not match system dimension");
    const auto m = static_cast<Eigen::Index>(sys.dim());
    if (dtau == 0.0)
        return {u_init, DenseMatrix::Identity(m, m)};
    IntervalSolution out;
    out.propagator = expm(dtau, sys.zeta);
    out.values = advance(u_init, build_boundary_vector(sys, u_left, u_right), out.propagator, sys);
    return out;
}

std::size_t ValueSurface::time_index(double tau) const
{
    const double scale = intervals.empty() ? 1.0 : std::max(1.0, intervals.back().tau_end);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - tau) <= 1e-12 * scale)
            return i;
    }
    std::ostringstream msg;
    msg << "tau = " << tau << " was not computed";
    throw DomainError(msg.str());
}

ValueSurface solve_bermudan(const OptionSpec& spec, const MarketParams& params, const Mesh& mesh,
                            std::span<const double> report_times)
{
    spec.validate();
    params.validate();
    const double maturity = spec.maturity;
    const double tol = 1e-12 * std::max(1.0, maturity);
    for (double tau : report_times) {
        if (!(tau >= -tol && tau <= maturity + tol)) {
            std::ostringstream msg;
            msg << "report time " << tau << " outside [0, " << maturity << "]";
            throw DomainError(msg.str());
        }
    }

    ValueSurface surface;
    surface.mesh = std::make_shared<const Mesh>(mesh);
    auto system = std::make_shared<const SystemMatrices>(build_system(mesh, params.sigma, params.rate));
    surface.system = system;
    const SystemMatrices& sys = *system;

    const auto taus = exercise_interval_boundaries(spec);
    const std::size_t n_intervals = taus.size() - 1;

    // Owning interval of every report time; an exercise date belongs to the
    // interval it opens.
    std::vector<std::size_t> owner(report_times.size());
    for (std::size_t k = 0; k < report_times.size(); ++k) {
        std::size_t e = 0;
        while (e + 1 < n_intervals && report_times[k] >= taus[e + 1] - tol)
            ++e;
        owner[k] = e;
    }
    surface.times.assign(report_times.begin(), report_times.end());
    surface.values.resize(report_times.size());
    surface.interval_index = owner;

    const PayoffSamples phi = payoff_vector(spec, mesh);
    Vector u = phi.interior.cwiseMax(0.0);
    double u_left = std::max(phi.left, 0.0);
    double u_right = std::max(phi.right, 0.0);

    PropagatorCache cache(sys, maturity);
    for (std::size_t e = 0; e < n_intervals; ++e) {
        const double begin = taus[e];
        const double end = taus[e + 1];
        surface.intervals.push_back({begin, end, u, u_left, u_right});
        const BoundaryVector f = build_boundary_vector(sys, u_left, u_right);

        const bool last = e + 1 == n_intervals;
        const bool need_end = !last || std::any_of(report_times.begin(), report_times.end(),
                                                   [&](double t) { return std::abs(t - end) <= tol; });
        Vector u_end;
        if (need_end)
            u_end = advance(u, f, cache.get(end - begin), sys);

        for (std::size_t k = 0; k < report_times.size(); ++k) {
            if (owner[k] != e)
                continue;
            const double dtau = std::max(0.0, report_times[k] - begin);
            if (dtau <= tol)
                surface.values[k] = u;
            else if (std::abs(report_times[k] - end) <= tol)
                surface.values[k] = u_end;
            else
                surface.values[k] = advance(u, f, cache.get(dtau), sys);
        }

        if (!last) {
            u = u_end.cwiseMax(phi.interior);
            u_left = std::max(phi.left, u_left);
            u_right = std::max(phi.right, u_right);
        }
    }
    return surface;
}

double value_at(const ValueSurface& surface, double s, double tau)
{
    const std::size_t k = surface.time_index(tau);
    const Mesh& mesh = *surface.mesh;
    const auto nodes = mesh.nodes();
    if (!(s >= 0.0 && s <= mesh.length())) {
        std::ostringstream msg;
        msg << "spot " << s << " outside [0, " << mesh.length() << "]";
        throw DomainError(msg.str());
    }
    const ExerciseInterval& interval = surface.intervals[surface.interval_index[k]];
    const Vector& values = surface.values[k];
    const std::size_t last = nodes.size() - 1;
    auto node_value = [&](std::size_t i) {
        if (i == 0)
            return interval.u_left;
        if (i == last)
            return interval.u_right;
        return values[static_cast<Eigen::Index>(i - 1)];
    };

    auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
    auto hi = static_cast<std::size_t>(it - nodes.begin());
    if (nodes[hi] == s)
        return node_value(hi);
    const std::size_t lo = hi - 1;
    const double w = (s - nodes[lo]) / (nodes[hi] - nodes[lo]);
    return (1.0 - w) * node_value(lo) + w * node_value(hi);
}

} // namespace mol
