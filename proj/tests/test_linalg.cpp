#include "molpricer/errors.hpp"
#include "molpricer/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace mol;

namespace {

TridiagonalMatrix random_tridiagonal(std::size_t n, std::mt19937_64& rng, double scale)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    TridiagonalMatrix m(n);
    for (auto& v : m.diag)
        v = u(rng);
    for (auto& v : m.sub)
        v = u(rng);
    for (auto& v : m.sup)
        v = u(rng);
    return m;
}

// Truncated Taylor series, summed term by term in long double.
DenseMatrix taylor_expm(const DenseMatrix& a, int terms)
{
    using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const LMatrix al = a.cast<long double>();
    LMatrix term = LMatrix::Identity(a.rows(), a.cols());
    LMatrix sum = term;
    for (int k = 1; k < terms; ++k) {
        term = (term * al) / static_cast<long double>(k);
        sum += term;
    }
    return sum.cast<double>();
}

double max_abs(const DenseMatrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

TEST(Expm, ZeroTimeIsExactIdentity)
{
    std::mt19937_64 rng(1);
    const TridiagonalMatrix m = random_tridiagonal(6, rng, 3.0);
    EXPECT_EQ(max_abs(expm(0.0, m) - DenseMatrix::Identity(6, 6)), 0.0);
}

TEST(Expm, DiagonalMatrixExponentiatesEntries)
{
    TridiagonalMatrix m(4);
    m.diag = {-1.0, 0.5, 2.0, -30.0};
    const DenseMatrix e = expm(1.5, m);
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(e(i, i), std::exp(1.5 * m.diag[static_cast<std::size_t>(i)]),
                    1e-12 * std::exp(1.5 * m.diag[static_cast<std::size_t>(i)]));
    EXPECT_NEAR(e(0, 1), 0.0, 1e-300);
}

TEST(Expm, MatchesTaylorSeriesOnSmallTridiagonals)
{
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 50; ++trial) {
        const TridiagonalMatrix m = random_tridiagonal(5, rng, 0.5);
        const DenseMatrix got = expm(1.0, m);
        const DenseMatrix want = taylor_expm(m.to_dense(), 30);
        EXPECT_LE(max_abs(got - want), 1e-12) << "trial " << trial;
    }
}

TEST(Expm, SemigroupProperty)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const TridiagonalMatrix m = random_tridiagonal(10, rng, 2.0);
        const double s = 0.3, t = 0.45;
        const DenseMatrix lhs = expm(s + t, m);
        const DenseMatrix rhs = expm(s, m) * expm(t, m);
        EXPECT_LE(max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)), 1e-9) << "trial " << trial;
    }
}

TEST(Expm, TimeDerivativeIsGenerator)
{
    std::mt19937_64 rng(11);
    const TridiagonalMatrix m = random_tridiagonal(8, rng, 1.0);
    const double t = 0.7, h = 1e-5;
    const DenseMatrix fd = (expm(t + h, m) - expm(t - h, m)) / (2.0 * h);
    const DenseMatrix exact = m.to_dense() * expm(t, m);
    EXPECT_LE(max_abs(fd - exact), 1e-7 * std::max(1.0, max_abs(exact)));
}

TEST(Expm, DenseAndTridiagonalAgree)
{
    std::mt19937_64 rng(3);
    const TridiagonalMatrix m = random_tridiagonal(7, rng, 4.0);
    EXPECT_LE(max_abs(expm(2.0, m) - expm(2.0 * m.to_dense())), 1e-10 * max_abs(expm(2.0, m)));
}

TEST(Expm, StiffNegativeGeneratorStaysBounded)
{
    // Diffusion-like matrix with a large norm: the result must be a contraction.
    const std::size_t n = 60;
    TridiagonalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m.diag[i] = -2.0e4;
    for (std::size_t i = 0; i + 1 < n; ++i)
        m.sub[i] = m.sup[i] = 1.0e4;
    const DenseMatrix e = expm(1.0, m);
    EXPECT_TRUE(e.allFinite());
    EXPECT_LE(e.cwiseAbs().rowwise().sum().maxCoeff(), 1.0 + 1e-10);
}

TEST(Expm, OverflowAndInvalidInput)
{
    TridiagonalMatrix big(3);
    big.diag = {800.0, 800.0, 800.0};
    EXPECT_THROW(expm(1.0, big), OverflowError);

    TridiagonalMatrix nan(3);
    nan.diag[1] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(expm(1.0, nan), DomainError);

    EXPECT_THROW(expm(-1.0, TridiagonalMatrix::identity(3)), DomainError);
}

TEST(SolveBanded, ResidualIsSmall)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 17u, 200u}) {
        const TridiagonalMatrix m = random_tridiagonal(n, rng, 1.0);
        Vector rhs(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < rhs.size(); ++i)
            rhs[i] = u(rng);
        const Vector y = solve_banded(m, rhs);
        const Vector dense = m.to_dense().fullPivLu().solve(rhs);
        EXPECT_LE((y - dense).cwiseAbs().maxCoeff(), 1e-8 * std::max(1.0, dense.cwiseAbs().maxCoeff()));
        EXPECT_LE((m * y - rhs).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, y.cwiseAbs().maxCoeff()));
    }
}

TEST(SolveBanded, NeedsPivoting)
{
    // Zero leading pivot: plain Thomas elimination would divide by zero.
    TridiagonalMatrix m(3);
    m.diag = {0.0, 1.0, 2.0};
    m.sub = {1.0, 1.0};
    m.sup = {1.0, 3.0};
    Vector rhs(3);
    rhs << 1.0, 2.0, 3.0;
    const Vector y = solve_banded(m, rhs);
    EXPECT_LE((m * y - rhs).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SolveBanded, SingularMatrixRaises)
{
    TridiagonalMatrix m(3);
    m.diag = {1.0, 1.0, 0.0};
    m.sub = {1.0, 0.0};
    m.sup = {1.0, 0.0};
    EXPECT_THROW(solve_banded(m, Vector::Ones(3)), SingularMatrixError);
}

TEST(Tridiagonal, ProductMatchesDense)
{
    std::mt19937_64 rng(9);
    const TridiagonalMatrix m = random_tridiagonal(9, rng, 2.0);
    const Vector v = Vector::LinSpaced(9, -1.0, 3.0);
    EXPECT_LE((m * v - m.to_dense() * v).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(m.norm1(), m.to_dense().cwiseAbs().colwise().sum().maxCoeff(), 1e-13);
    EXPECT_THROW(apply_dense(DenseMatrix::Identity(3, 3), v), DomainError);
}
