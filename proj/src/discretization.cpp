#include "molpricer/discretization.hpp"

#include "molpricer/errors.hpp"

#include <cmath>

namespace mol {

Vector BoundaryVector::to_dense() const
{
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
    if (dim == 0)
        return out;
    out[0] += first;
    out[static_cast<Eigen::Index>(dim - 1)] += last;
    return out;
}

SystemMatrices build_system(const Mesh& mesh, double sigma, double rate)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("volatility must be positive");
    if (!std::isfinite(rate))
        throw DomainError("rate must be finite");

    const auto m = mesh.interior_size();
    SystemMatrices sys;
    sys.sigma = sigma;
    sys.rate = rate;
    sys.A = TridiagonalMatrix(m);
    sys.B = TridiagonalMatrix(m);
    sys.C = TridiagonalMatrix(m);
    sys.D = TridiagonalMatrix(m);
    sys.D2 = TridiagonalMatrix(m);
    sys.x.resize(m);

    const double var = sigma * sigma;
    for (std::size_t row = 0; row < m; ++row) {
        const std::size_t node = row + 1;
        const double x = mesh.node(node);
        const double h_left = mesh.spacing(node);
        const double h_right = mesh.spacing(node + 1);
        if (!(h_left > 0.0) || !(h_right > 0.0))
            throw DomainError("non-positive mesh spacing");
        const double h_sum = h_left + h_right;

        const double gamma = -var * x * x / (h_left * h_right);
        const double alpha_up = var * x * x / (h_sum * h_right);
        const double alpha_down = var * x * x / (h_sum * h_left);
        const double b = rate * x / h_sum;
        const double d = 1.0 / h_sum;
        const double d2_down = 2.0 / (h_left * h_sum);
        const double d2_mid = -2.0 / (h_left * h_right);
        const double d2_up = 2.0 / (h_right * h_sum);

        sys.x[row] = x;
        sys.A.diag[row] = gamma;
        sys.C.diag[row] = -rate;
        sys.D2.diag[row] = d2_mid;

        if (row > 0) {
            sys.A.sub[row - 1] = alpha_down;
            sys.B.sub[row - 1] = -b;
            sys.D.sub[row - 1] = -d;
            sys.D2.sub[row - 1] = d2_down;
        } else {
            sys.boundary.alpha_left = alpha_down;
            sys.boundary.b_left = b;
            sys.boundary.d_left = d;
            sys.boundary.d2_left = d2_down;
        }
        if (row + 1 < m) {
            sys.A.sup[row] = alpha_up;
            sys.B.sup[row] = b;
            sys.D.sup[row] = d;
            sys.D2.sup[row] = d2_up;
        } else {
            sys.boundary.alpha_right = alpha_up;
            sys.boundary.b_right = b;
            sys.boundary.d_right = d;
            sys.boundary.d2_right = d2_up;
        }
    }

    sys.zeta = sys.A + sys.B + sys.C;
    sys.zeta.validate();
    return sys;
}

BoundaryVector build_boundary_vector(const Mesh& mesh, const SystemMatrices& sys, double u_left,
                                     double u_right)
{
    if (mesh.interior_size() != sys.dim())
        throw DomainError("boundary vector: mesh and system dimensions differ");
    return build_boundary_vector(sys, u_left, u_right);
}

BoundaryVector build_boundary_vector(const SystemMatrices& sys, double u_left, double u_right)
{
    BoundaryVector f;
    f.dim = sys.dim();
    f.u_left = u_left;
    f.u_right = u_right;
    f.first = (sys.boundary.alpha_left - sys.boundary.b_left) * u_left;
    f.last = (sys.boundary.alpha_right + sys.boundary.b_right) * u_right;
    return f;
}

} // namespace mol
