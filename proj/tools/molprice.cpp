// molprice: price, Greeks, convergence and c-sweep tables for the MOL pricer.

#include "molpricer/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace {

using mol::report::RunConfig;

struct Flags {
    RunConfig config;
    std::string exercise_dates;
    std::string format = "csv";
    double reference = 0.0;
};

void add_options(CLI::App& app, Flags& f)
{
    RunConfig& c = f.config;
    app.add_option("--payoff", c.payoff, "call | put | powered | cash")
        ->check(CLI::IsMember({"call", "put", "powered", "cash"}))
        ->capture_default_str();
    app.add_option("--strike", c.strike)->capture_default_str();
    app.add_option("--power", c.power, "exponent of the powered payoff")->capture_default_str();
    app.add_option("--cash-amount", c.cash_amount)->capture_default_str();
    app.add_option("--sigma", c.sigma)->capture_default_str();
    app.add_option("--rate", c.rate)->capture_default_str();
    app.add_option("--spot", c.spot)->capture_default_str();
    app.add_option("--maturity", c.maturity)->capture_default_str();
    app.add_option("--exercise-dates", f.exercise_dates,
                   "count E of equally spaced dates, or a comma list of calendar times (default European)");
    app.add_option("--n", c.n, "interior grid sizes")->delimiter(',')->capture_default_str();
    app.add_option("--c", c.c, "mesh concentration parameters")->delimiter(',')->capture_default_str();
    app.add_option("--d", c.d)->capture_default_str();
    app.add_option("--eta-tail", c.eta_tail)->capture_default_str();
    app.add_option("--tau", c.tau, "times to maturity to report (default T)")->delimiter(',');
    app.add_option("--reference", f.reference, "reference price used for the error columns");
    app.add_option("--lattice-steps", c.lattice_steps, "lattice steps of the Bermudan put oracle")
        ->capture_default_str();
    app.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", c.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Method-of-lines Black-Scholes pricer"};
    app.set_config("--config", "", "flat key = value file mirroring the long flags");
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    add_options(app, flags);

    auto* price = app.add_subcommand("price", "price at the spot node");
    auto* greeks = app.add_subcommand("greeks", "delta, gamma, theta, vega and rho at the spot node");
    auto* converge = app.add_subcommand("converge", "price and wall time for each N");
    auto* csweep = app.add_subcommand("csweep", "price error for each c at one N");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig& config = flags.config;
        config.format = mol::report::parse_format(flags.format);
        if (!flags.exercise_dates.empty())
            config.exercise_dates = mol::report::parse_exercise_dates(flags.exercise_dates, config.maturity);
        if (app.count("--reference") > 0)
            config.reference = flags.reference;

        mol::report::Table table;
        if (price->parsed())
            table = mol::report::cmd_price(config);
        else if (greeks->parsed())
            table = mol::report::cmd_greeks(config);
        else if (converge->parsed())
            table = mol::report::cmd_converge(config);
        else if (csweep->parsed())
            table = mol::report::cmd_csweep(config);

        const std::string text = mol::report::render(table, config.format);
        if (config.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(config.out);
            if (!file)
                throw std::runtime_error("cannot open output file " + config.out);
            file << text;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "molprice: %s\n", e.what());
        return 2;
    }
    return 0;
}
