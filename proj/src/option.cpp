#include "molpricer/option.hpp"

#include "molpricer/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

double evaluate(const Payoff& payoff, double x)
{
    return std::visit(overloaded{
                          [x](const Call& p) { return std::max(x - p.strike, 0.0); },
                          [x](const Put& p) { return std::max(p.strike - x, 0.0); },
                          [x](const Powered& p) { return std::pow(std::max(x - p.strike, 0.0), p.power); },
                          [x](const CashOrNothing& p) { return x > p.strike ? p.amount : 0.0; },
                      },
                      payoff);
}

double strike_of(const Payoff& payoff)
{
    return std::visit([](const auto& p) { return p.strike; }, payoff);
}

std::string name_of(const Payoff& payoff)
{
    return std::visit(overloaded{
                          [](const Call&) { return std::string("call"); },
                          [](const Put&) { return std::string("put"); },
                          [](const Powered&) { return std::string("powered"); },
                          [](const CashOrNothing&) { return std::string("cash"); },
                      },
                      payoff);
}

void MarketParams::validate() const
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("volatility must be positive");
    if (!std::isfinite(rate))
        throw DomainError("rate must be finite");
    if (!(spot > 0.0) || !std::isfinite(spot))
        throw DomainError("spot must be positive");
}

OptionSpec OptionSpec::european(Payoff payoff, double maturity)
{
    return OptionSpec{payoff, maturity, {maturity}};
}

OptionSpec OptionSpec::bermudan(Payoff payoff, double maturity, int count)
{
    if (count < 1)
        throw DomainError("need at least one exercise date");
    std::vector<double> dates(static_cast<std::size_t>(count));
    for (int e = 1; e <= count; ++e)
        dates[static_cast<std::size_t>(e - 1)] = maturity * e / count;
    dates.back() = maturity;
    return OptionSpec{payoff, maturity, std::move(dates)};
}

void OptionSpec::validate() const
{
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        throw DomainError("maturity must be positive");
    if (!(strike_of(payoff) > 0.0))
        throw DomainError("strike must be positive");
    if (const auto* p = std::get_if<Powered>(&payoff); p && p->power < 1)
        throw DomainError("power must be an integer >= 1");
    if (const auto* p = std::get_if<CashOrNothing>(&payoff); p && !(p->amount > 0.0))
        throw DomainError("cash amount must be positive");
    if (exercise_dates.empty())
        throw DomainError("exercise schedule is empty");
    for (std::size_t i = 0; i < exercise_dates.size(); ++i) {
        const double t = exercise_dates[i];
        if (!(t > 0.0 && t <= maturity))
            throw DomainError("exercise dates must lie in (0, T]");
        if (i > 0 && !(t > exercise_dates[i - 1]))
            throw DomainError("exercise dates must be strictly increasing");
    }
    if (exercise_dates.back() != maturity)
        throw DomainError("last exercise date must equal maturity");
}

} // namespace mol
