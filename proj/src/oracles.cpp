#include "molpricer/oracles.hpp"

#include "molpricer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mol::oracles {

namespace {

void check_inputs(double s, double k, double sigma, double tau)
{
    if (!(s > 0.0) || !(k > 0.0) || !(sigma > 0.0))
        throw DomainError("spot, strike and volatility must be positive");
    if (!(tau > 0.0))
        throw DomainError("closed-form Greeks need tau > 0");
}

double bump_size(double v)
{
    return 1e-5 * std::max(std::abs(v), 1e-2);
}

long double binomial(int n, int k)
{
    long double out = 1.0L;
    for (int i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

} // namespace

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

AnalyticResult bs_call(double s, double k, double sigma, double r, double tau)
{
    check_inputs(s, k, sigma, tau);
    const double sqrt_tau = std::sqrt(tau);
    const double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * tau) / (sigma * sqrt_tau);
    const double d2 = d1 - sigma * sqrt_tau;
    const double discount = std::exp(-r * tau);
    const double nd1 = normal_cdf(d1);
    const double nd2 = normal_cdf(d2);
    const double pdf1 = normal_pdf(d1);

    AnalyticResult out;
    out.price = s * nd1 - k * discount * nd2;
    out.delta = nd1;
    out.gamma = pdf1 / (sigma * s * sqrt_tau);
    out.theta = -sigma * s * pdf1 / (2.0 * sqrt_tau) - r * k * discount * nd2;
    out.vega = s * sqrt_tau * pdf1;
    out.rho = tau * k * discount * nd2;
    return out;
}

AnalyticResult bs_put(double s, double k, double sigma, double r, double tau)
{
    const AnalyticResult call = bs_call(s, k, sigma, r, tau);
    const double discount = std::exp(-r * tau);
    AnalyticResult out = call;
    out.price = call.price - s + k * discount;
    out.delta = call.delta - 1.0;
    out.theta = call.theta + r * k * discount;
    out.rho = call.rho - tau * k * discount;
    return out;
}

double powered_price(double s, double k, double sigma, double r, double tau, int p)
{
    check_inputs(s, k, sigma, tau);
    if (p < 1)
        throw DomainError("power must be an integer >= 1");
    const double vol_sqrt_tau = sigma * std::sqrt(tau);
    const double log_moneyness = std::log(s / k);
    long double sum = 0.0L;
    for (int q = 0; q <= p; ++q) {
        const int j = p - q;
        const double d = (log_moneyness + (r + (j - 0.5) * sigma * sigma) * tau) / vol_sqrt_tau;
        const double growth = std::exp((j - 1) * (r + 0.5 * j * sigma * sigma) * tau);
        sum += binomial(p, q) * std::pow(s, j) * std::pow(-k, q) * growth * normal_cdf(d);
    }
    return static_cast<double>(sum);
}

AnalyticResult powered(double s, double k, double sigma, double r, double tau, int p)
{
    auto price = [&](double s_, double sigma_, double r_, double tau_) {
        return powered_price(s_, k, sigma_, r_, tau_, p);
    };
    AnalyticResult out;
    out.price = price(s, sigma, r, tau);

    const double hs = bump_size(s);
    const double up = price(s + hs, sigma, r, tau);
    const double down = price(s - hs, sigma, r, tau);
    out.delta = (up - down) / (2.0 * hs);
    out.gamma = (up - 2.0 * out.price + down) / (hs * hs);

    const double hv = bump_size(sigma);
    out.vega = (price(s, sigma + hv, r, tau) - price(s, sigma - hv, r, tau)) / (2.0 * hv);
    const double hr = bump_size(r);
    out.rho = (price(s, sigma, r + hr, tau) - price(s, sigma, r - hr, tau)) / (2.0 * hr);
    const double ht = std::min(bump_size(tau), 0.5 * tau);
    out.theta = -(price(s, sigma, r, tau + ht) - price(s, sigma, r, tau - ht)) / (2.0 * ht);
    return out;
}

AnalyticResult cash_or_nothing(double s, double k, double c_amount, double sigma, double r, double tau)
{
    check_inputs(s, k, sigma, tau);
    const double sqrt_tau = std::sqrt(tau);
    const double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * tau) / (sigma * sqrt_tau);
    const double d2 = d1 - sigma * sqrt_tau;
    const double pv = c_amount * std::exp(-r * tau);
    const double nd2 = normal_cdf(d2);
    const double pdf2 = normal_pdf(d2);

    AnalyticResult out;
    out.price = pv * nd2;
    out.delta = pv * pdf2 / (sigma * s * sqrt_tau);
    out.gamma = -pv * d1 * pdf2 / (sigma * sigma * s * s * tau);
    out.vega = -pv * d1 / sigma * pdf2;
    out.rho = pv * (-tau * nd2 + sqrt_tau / sigma * pdf2);
    out.theta = pv * (r * nd2 + (d1 / (2.0 * tau) - r / (sigma * sqrt_tau)) * pdf2);
    return out;
}

double binomial_bermudan_put(double s0, double k, double sigma, double r, double t_maturity,
                             const std::vector<double>& exercise_dates, int steps)
{
    if (!(s0 > 0.0) || !(k > 0.0) || !(sigma > 0.0) || !(t_maturity > 0.0))
        throw DomainError("lattice: spot, strike, volatility and maturity must be positive");
    if (steps < 1)
        throw DomainError("lattice: need at least one step");
    if (exercise_dates.empty() || std::abs(exercise_dates.back() - t_maturity) > 1e-12 * t_maturity)
        throw DomainError("lattice: last exercise date must equal maturity");

    const double dt = t_maturity / steps;
    std::vector<bool> exercisable(static_cast<std::size_t>(steps) + 1, false);
    for (double t : exercise_dates) {
        const double pos = t / dt;
        const double nearest = std::round(pos);
        if (!(t > 0.0 && t <= t_maturity) || std::abs(pos - nearest) > 1e-9 * std::max(1.0, pos))
            throw DomainError("lattice: exercise date does not fall on a lattice time");
        exercisable[static_cast<std::size_t>(nearest)] = true;
    }

    const double spread = sigma * std::sqrt(dt);
    const double drift = r * dt;
    // p = (1 - e^{-spread}) / (e^{spread} - e^{-spread}), written to stay accurate as spread -> 0.
    const double p_up = -std::expm1(-spread) / (2.0 * std::sinh(spread));
    const double p_down = 1.0 - p_up;
    const double discount = std::exp(-drift);

    auto spot_at = [&](int step, int ups) {
        return s0 * std::exp(step * drift + (2.0 * ups - step) * spread);
    };

    std::vector<double> values(static_cast<std::size_t>(steps) + 1);
    for (int j = 0; j <= steps; ++j)
        values[static_cast<std::size_t>(j)] = std::max(k - spot_at(steps, j), 0.0);

    for (int n = steps - 1; n >= 0; --n) {
        const bool exercise = exercisable[static_cast<std::size_t>(n)];
        for (int j = 0; j <= n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            double v = discount * (p_up * values[jj + 1] + p_down * values[jj]);
            if (exercise)
                v = std::max(v, k - spot_at(n, j));
            values[jj] = v;
        }
    }
    return values[0];
}

} // namespace mol::oracles
