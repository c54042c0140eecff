#pragma once

#include "molpricer/grid.hpp"
#include "molpricer/option.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mol::report {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& token);

/// Everything a command-line run needs. Defaults reproduce the European
/// call setup (sigma 0.3, r 0.03, S0 = K = 100, T = 1, c = 110).
struct RunConfig {
    std::string payoff = "call"; ///< call | put | powered | cash
    double strike = 100.0;
    int power = 2;
    double cash_amount = 100.0;
    double sigma = 0.3;
    double rate = 0.03;
    double spot = 100.0;
    double maturity = 1.0;
    /// Calendar exercise dates; empty means European (single date at T).
    std::vector<double> exercise_dates;
    std::vector<std::size_t> n{800};
    std::vector<double> c{110.0};
    double d = 1.2;
    double eta_tail = 1.1;
    /// Times to maturity to report; empty means {maturity}.
    std::vector<double> tau;
    /// Overrides the built-in oracle for every row.
    std::optional<double> reference;
    /// Lattice steps of the Bermudan put oracle.
    int lattice_steps = 20000;
    OutputFormat format = OutputFormat::csv;
    std::string out;

    OptionSpec option() const;
    MarketParams market() const;
    GridSpec grid(std::size_t n_interior, double c_value) const;
    std::vector<double> report_times() const;

    /// Throws DomainError on any invalid field.
    void validate() const;
};

/// "10" means ten equally spaced dates; "0.25,0.5,1" is an explicit list.
std::vector<double> parse_exercise_dates(const std::string& text, double maturity);

/// Stable 64-bit FNV-1a hash of the pricing-relevant fields, as 16 hex digits.
std::string config_hash(const RunConfig& config);

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::string command;
    std::string config_hash;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Rows (N, c, spot, tau, price, abs_error, log_error), one per grid size,
/// c value and report time. log_error is ln|price - reference|.
Table cmd_price(const RunConfig& config);

/// Rows (N, c, tau, greek, value, abs_error, log_error) for delta, gamma,
/// theta, vega and rho at the spot node.
Table cmd_greeks(const RunConfig& config);

/// Rows (N, c, tau, price, abs_error, log_error, seconds), one per entry of
/// config.n; config.c must hold a single value.
Table cmd_converge(const RunConfig& config);

/// Rows (N, c, tau, price, abs_error, log_error), one per entry of config.c;
/// config.n must hold a single value.
Table cmd_csweep(const RunConfig& config);

/// CSV: two '#' comment lines (command, config hash), a header, then rows.
/// JSON: {"command", "config_hash", "rows": [ {column: value, ...}, ... ]}.
std::string render(const Table& table, OutputFormat format);

} // namespace mol::report
