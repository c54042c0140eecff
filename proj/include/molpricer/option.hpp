#pragma once

#include <string>
#include <variant>
#include <vector>

namespace mol {

struct Call {
    double strike;
};

struct Put {
    double strike;
};

/// max(x - K, 0)^p
struct Powered {
    double strike;
    int power;
};

/// Pays amount when x > K.
struct CashOrNothing {
    double strike;
    double amount;
};

using Payoff = std::variant<Call, Put, Powered, CashOrNothing>;

double evaluate(const Payoff& payoff, double x);
double strike_of(const Payoff& payoff);
std::string name_of(const Payoff& payoff);

struct MarketParams {
    double sigma = 0.3; ///< volatility per sqrt(year)
    double rate = 0.03; ///< continuously compounded risk-free rate per year
    double spot = 100.0;

    void validate() const;
};

/// Payoff, maturity and exercise schedule (calendar times in (0, T], last == T).
/// A single exercise date at T is a European option.
struct OptionSpec {
    Payoff payoff = Call{100.0};
    double maturity = 1.0;
    std::vector<double> exercise_dates{1.0};

    static OptionSpec european(Payoff payoff, double maturity);
    /// count equally spaced dates T/count, 2T/count, ..., T.
    static OptionSpec bermudan(Payoff payoff, double maturity, int count);

    bool is_european() const { return exercise_dates.size() == 1; }
    void validate() const;
};

} // namespace mol
