#include "molpricer/linalg.hpp"

#include "molpricer/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace mol {

TridiagonalMatrix::TridiagonalMatrix(std::size_t dim)
    : sub(dim > 0 ? dim - 1 : 0, 0.0), diag(dim, 0.0), sup(dim > 0 ? dim - 1 : 0, 0.0)
{
}

void TridiagonalMatrix::validate() const
{
    const auto n = dim();
    const auto off = n > 0 ? n - 1 : 0;
    if (sub.size() != off || sup.size() != off)
        throw DomainError("tridiagonal band lengths inconsistent with dimension");
    auto finite = [](double x) { return std::isfinite(x); };
    if (!std::all_of(sub.begin(), sub.end(), finite) || !std::all_of(diag.begin(), diag.end(), finite) ||
        !std::all_of(sup.begin(), sup.end(), finite))
        throw DomainError("tridiagonal matrix has non-finite entries");
}

Vector TridiagonalMatrix::operator*(const Vector& v) const
{
    const auto n = dim();
    if (static_cast<std::size_t>(v.size()) != n)
        throw DomainError("tridiagonal product: dimension mismatch");
    Vector out(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * v[static_cast<Eigen::Index>(i)];
        if (i > 0)
            acc += sub[i - 1] * v[static_cast<Eigen::Index>(i - 1)];
        if (i + 1 < n)
            acc += sup[i] * v[static_cast<Eigen::Index>(i + 1)];
        out[static_cast<Eigen::Index>(i)] = acc;
    }
    return out;
}

TridiagonalMatrix& TridiagonalMatrix::operator+=(const TridiagonalMatrix& other)
{
    if (other.dim() != dim())
        throw DomainError("tridiagonal sum: dimension mismatch");
    for (std::size_t i = 0; i < diag.size(); ++i)
        diag[i] += other.diag[i];
    for (std::size_t i = 0; i < sub.size(); ++i) {
        sub[i] += other.sub[i];
        sup[i] += other.sup[i];
    }
    return *this;
}

TridiagonalMatrix operator+(TridiagonalMatrix lhs, const TridiagonalMatrix& rhs)
{
    lhs += rhs;
    return lhs;
}

TridiagonalMatrix TridiagonalMatrix::scaled(double factor) const
{
    TridiagonalMatrix out = *this;
    for (double& x : out.sub) x *= factor;
    for (double& x : out.diag) x *= factor;
    for (double& x : out.sup) x *= factor;
    return out;
}

double TridiagonalMatrix::norm1() const
{
    const auto n = dim();
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = std::abs(diag[j]);
        if (j > 0)
            col += std::abs(sup[j - 1]);
        if (j + 1 < n)
            col += std::abs(sub[j]);
        best = std::max(best, col);
    }
    return best;
}

DenseMatrix TridiagonalMatrix::to_dense() const
{
    const auto n = static_cast<Eigen::Index>(dim());
    DenseMatrix out = DenseMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(i, i) = diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            out(i + 1, i) = sub[static_cast<std::size_t>(i)];
            out(i, i + 1) = sup[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

TridiagonalMatrix TridiagonalMatrix::identity(std::size_t dim)
{
    TridiagonalMatrix out(dim);
    std::fill(out.diag.begin(), out.diag.end(), 1.0);
    return out;
}

namespace {

// Degree-13 Pade coefficients and the matching 1-norm threshold.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

DenseMatrix expm_scaled(const DenseMatrix& a, double norm)
{
    const auto n = a.rows();
    if (n == 0)
        return a;

    int squarings = 0;
    if (norm > kTheta13)
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));

    const DenseMatrix scaled = a / std::ldexp(1.0, squarings);
    const DenseMatrix ident = DenseMatrix::Identity(n, n);
    const DenseMatrix a2 = scaled * scaled;
    const DenseMatrix a4 = a2 * a2;
    const DenseMatrix a6 = a4 * a2;

    const auto& b = kPade13;
    DenseMatrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    DenseMatrix odd = a6 * inner;
    odd += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
    const DenseMatrix u = scaled * odd;

    inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    DenseMatrix v = a6 * inner;
    v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

    DenseMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k)
        r = r * r;

    if (!r.allFinite()) {
        std::ostringstream msg;
        msg << "matrix exponential overflowed (1-norm of argument " << norm << ")";
        throw OverflowError(msg.str());
    }
    return r;
}

} // namespace

DenseMatrix expm(double tau, const TridiagonalMatrix& m)
{
    if (std::isnan(tau) || tau < 0.0)
        throw DomainError("expm: scale must be non-negative");
    m.validate();
    const auto n = static_cast<Eigen::Index>(m.dim());
    if (tau == 0.0)
        return DenseMatrix::Identity(n, n);
    const double norm = tau * m.norm1();
    if (!std::isfinite(norm)) {
        std::ostringstream msg;
        msg << "expm: 1-norm of argument is not finite (" << norm << ")";
        throw OverflowError(msg.str());
    }
    return expm_scaled(m.scaled(tau).to_dense(), norm);
}

DenseMatrix expm(const DenseMatrix& a)
{
    if (a.rows() != a.cols())
        throw DomainError("expm: matrix must be square");
    if (a.hasNaN())
        throw DomainError("expm: NaN input");
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(norm)) {
        std::ostringstream msg;
        msg << "expm: 1-norm of argument is not finite (" << norm << ")";
        throw OverflowError(msg.str());
    }
    return expm_scaled(a, norm);
}

Vector solve_banded(const TridiagonalMatrix& m, const Vector& rhs)
{
    const auto n = m.dim();
    if (static_cast<std::size_t>(rhs.size()) != n)
        throw DomainError("solve_banded: dimension mismatch");
    if (n == 0)
        return rhs;

    // Upper factor has bands u0 (diagonal), u1, u2; row swaps keep it within
    // two superdiagonals.
    std::vector<double> lower(m.sub);
    std::vector<double> u0(m.diag);
    std::vector<double> u1(m.sup);
    std::vector<double> u2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<double> y(rhs.data(), rhs.data() + n);

    constexpr double kTinyPivot = 1e-300;
    auto singular = [](std::size_t row) {
        std::ostringstream msg;
        msg << "solve_banded: matrix is singular (pivot at row " << row << ")";
        return SingularMatrixError(msg.str());
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(lower[i]) > std::abs(u0[i])) {
            // Swap rows i and i + 1.
            std::swap(u0[i], lower[i]);
            const double next_diag = u0[i + 1];
            u0[i + 1] = u1[i];
            u1[i] = next_diag;
            if (i + 2 < n) {
                u2[i] = u1[i + 1];
                u1[i + 1] = 0.0;
            }
            std::swap(y[i], y[i + 1]);
        } else if (i + 2 < n) {
            u2[i] = 0.0;
        }
        if (std::abs(u0[i]) < kTinyPivot)
            throw singular(i);
        const double factor = lower[i] / u0[i];
        u0[i + 1] -= factor * u1[i];
        if (i + 2 < n)
            u1[i + 1] -= factor * u2[i];
        y[i + 1] -= factor * y[i];
    }
    if (std::abs(u0[n - 1]) < kTinyPivot)
        throw singular(n - 1);

    Vector out(static_cast<Eigen::Index>(n));
    for (std::size_t k = n; k-- > 0;) {
        double acc = y[k];
        if (k + 1 < n)
            acc -= u1[k] * out[static_cast<Eigen::Index>(k + 1)];
        if (k + 2 < n)
            acc -= u2[k] * out[static_cast<Eigen::Index>(k + 2)];
        out[static_cast<Eigen::Index>(k)] = acc / u0[k];
    }
    return out;
}

Vector apply_dense(const DenseMatrix& m, const Vector& v)
{
    if (m.cols() != v.size())
        throw DomainError("apply_dense: dimension mismatch");
    return m * v;
}

} // namespace mol
