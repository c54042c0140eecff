#pragma once

#include <vector>

namespace mol::oracles {

/// Price and Greeks; theta is d/dt in calendar time.
struct AnalyticResult {
    double price = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double vega = 0.0;
    double rho = 0.0;
};

/// Standard normal CDF via erfc.
double normal_cdf(double x);
double normal_pdf(double x);

/// Black-Scholes European call. Throws DomainError for tau <= 0 (the
/// Greeks are distributional at expiry).
AnalyticResult bs_call(double s, double k, double sigma, double r, double tau);

/// European put from put-call parity.
AnalyticResult bs_put(double s, double k, double sigma, double r, double tau);

/// Closed form of the powered call max(S - K, 0)^p.
double powered_price(double s, double k, double sigma, double r, double tau, int p);

/// powered_price with Greeks from central differences of the closed form
/// (relative bump 1e-5).
AnalyticResult powered(double s, double k, double sigma, double r, double tau, int p);

/// Cash-or-nothing call paying c_amount when S_T > K. Theta is the exact
/// t-derivative of C e^{-r tau} N(d2).
AnalyticResult cash_or_nothing(double s, double k, double c_amount, double sigma, double r, double tau);

/// Bermudan put on a recombining binomial lattice with exercise only at
/// exercise_dates (calendar times in (0, T], last == T). Up/down factors are
/// CRR factors centred on the forward, u = e^{r dt + sigma sqrt(dt)},
/// d = e^{r dt - sigma sqrt(dt)}, which keeps the risk-neutral probability
/// inside (0, 1) for any sigma > 0. Every exercise date must fall on a
/// lattice time.
double binomial_bermudan_put(double s0, double k, double sigma, double r, double t_maturity,
                             const std::vector<double>& exercise_dates, int steps);

} // namespace mol::oracles
