#include "molpricer/report.hpp"

#include "molpricer/errors.hpp"
#include "molpricer/greeks.hpp"
#include "molpricer/oracles.hpp"
#include "molpricer/solver.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace mol::report {

namespace {

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct ErrorCells {
    Cell abs_error;
    Cell log_error;
};

ErrorCells error_cells(double value, std::optional<double> reference)
{
    if (!reference)
        return {std::monostate{}, std::monostate{}};
    const double err = std::abs(value - *reference);
    return {err, err > 0.0 ? Cell{std::log(err)} : Cell{std::monostate{}}};
}

std::optional<double> bermudan_put_reference(const RunConfig& config, double tau)
{
    const double now = config.maturity - tau;
    const double tol = 1e-12 * std::max(1.0, config.maturity);
    std::vector<double> remaining;
    bool exercisable_now = false;
    for (double t : config.option().exercise_dates) {
        if (t > now + tol)
            remaining.push_back(t - now);
        else if (std::abs(t - now) <= tol)
            exercisable_now = true;
    }
    try {
        double v = oracles::binomial_bermudan_put(config.spot, config.strike, config.sigma, config.rate, tau,
                                                  remaining, config.lattice_steps);
        if (exercisable_now)
            v = std::max(v, config.strike - config.spot);
        return v;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

std::optional<oracles::AnalyticResult> european_reference(const RunConfig& config, double tau)
{
    if (!(tau > 0.0))
        return std::nullopt;
    const double s = config.spot;
    const double k = config.strike;
    if (config.payoff == "call")
        return oracles::bs_call(s, k, config.sigma, config.rate, tau);
    if (config.payoff == "put")
        return oracles::bs_put(s, k, config.sigma, config.rate, tau);
    if (config.payoff == "powered")
        return oracles::powered(s, k, config.sigma, config.rate, tau, config.power);
    if (config.payoff == "cash")
        return oracles::cash_or_nothing(s, k, config.cash_amount, config.sigma, config.rate, tau);
    return std::nullopt;
}

std::optional<double> reference_price(const RunConfig& config, double tau)
{
    if (config.reference)
        return config.reference;
    const OptionSpec spec = config.option();
    if (!(tau > 0.0))
        return evaluate(spec.payoff, config.spot);
    if (spec.is_european()) {
        if (auto r = european_reference(config, tau))
            return r->price;
        return std::nullopt;
    }
    if (config.payoff == "put")
        return bermudan_put_reference(config, tau);
    return std::nullopt;
}

std::map<double, std::optional<double>> reference_prices(const RunConfig& config)
{
    std::map<double, std::optional<double>> out;
    for (double tau : config.report_times())
        if (!out.contains(tau))
            out[tau] = reference_price(config, tau);
    return out;
}

Table make_table(const RunConfig& config, std::string command, std::vector<std::string> columns)
{
    config.validate();
    Table t;
    t.command = std::move(command);
    t.config_hash = config_hash(config);
    t.columns = std::move(columns);
    return t;
}

Mesh mesh_for(const RunConfig& config, std::size_t n, double c)
{
    return build_mesh(config.grid(n, c));
}

} // namespace

OutputFormat parse_format(const std::string& token)
{
    if (token == "csv")
        return OutputFormat::csv;
    if (token == "json")
        return OutputFormat::json;
    throw DomainError("format must be csv or json, got '" + token + "'");
}

OptionSpec RunConfig::option() const
{
    Payoff p;
    if (payoff == "call")
        p = Call{strike};
    else if (payoff == "put")
        p = Put{strike};
    else if (payoff == "powered")
        p = Powered{strike, power};
    else if (payoff == "cash")
        p = CashOrNothing{strike, cash_amount};
    else
        throw DomainError("payoff must be one of call, put, powered, cash; got '" + payoff + "'");
    if (exercise_dates.empty())
        return OptionSpec::european(p, maturity);
    return OptionSpec{p, maturity, exercise_dates};
}

MarketParams RunConfig::market() const
{
    return MarketParams{sigma, rate, spot};
}

GridSpec RunConfig::grid(std::size_t n_interior, double c_value) const
{
    return GridSpec{n_interior, c_value, d, eta_tail, {spot}};
}

std::vector<double> RunConfig::report_times() const
{
    return tau.empty() ? std::vector<double>{maturity} : tau;
}

void RunConfig::validate() const
{
    option().validate();
    market().validate();
    if (n.empty() || c.empty())
        throw DomainError("need at least one grid size and one c value");
    for (std::size_t n_value : n)
        for (double c_value : c)
            grid(n_value, c_value).validate();
    for (double t : report_times())
        if (!(t >= 0.0 && t <= maturity))
            throw DomainError("report time " + format_number(t) + " outside [0, T]");
    if (lattice_steps < 1)
        throw DomainError("lattice steps must be positive");
}

std::vector<double> parse_exercise_dates(const std::string& text, double maturity)
{
    if (text.find_first_of(",.eE") == std::string::npos) {
        std::size_t used = 0;
        const int count = std::stoi(text, &used);
        if (used != text.size())
            throw DomainError("cannot parse exercise dates '" + text + "'");
        return OptionSpec::bermudan(Call{1.0}, maturity, count).exercise_dates;
    }
    std::vector<double> dates;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        dates.push_back(std::stod(item, &used));
        if (used != item.size())
            throw DomainError("cannot parse exercise date '" + item + "'");
    }
    return dates;
}

std::string config_hash(const RunConfig& config)
{
    std::ostringstream canon;
    auto num = [&](const char* key, double v) { canon << key << '=' << format_number(v) << ';'; };
    canon << "payoff=" << config.payoff << ';';
    num("strike", config.strike);
    num("power", config.power);
    num("cash_amount", config.cash_amount);
    num("sigma", config.sigma);
    num("rate", config.rate);
    num("spot", config.spot);
    num("maturity", config.maturity);
    for (double t : config.option().exercise_dates)
        num("exercise", t);
    for (std::size_t n : config.n)
        num("n", static_cast<double>(n));
    for (double c : config.c)
        num("c", c);
    num("d", config.d);
    num("eta_tail", config.eta_tail);
    for (double t : config.report_times())
        num("tau", t);
    if (config.reference)
        num("reference", *config.reference);
    num("lattice_steps", config.lattice_steps);

    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : canon.str()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

Table cmd_price(const RunConfig& config)
{
    Table t = make_table(config, "price", {"N", "c", "spot", "tau", "price", "abs_error", "log_error"});
    const auto refs = reference_prices(config);
    const auto times = config.report_times();
    for (std::size_t n : config.n) {
        for (double c : config.c) {
            const Mesh mesh = mesh_for(config, n, c);
            const ValueSurface surface = solve_bermudan(config.option(), config.market(), mesh, times);
            for (double tau : times) {
                const double v = value_at(surface, config.spot, tau);
                const auto err = error_cells(v, refs.at(tau));
                t.rows.push_back({static_cast<long long>(n), c, config.spot, tau, v, err.abs_error, err.log_error});
            }
        }
    }
    return t;
}

Table cmd_greeks(const RunConfig& config)
{
    Table t = make_table(config, "greeks", {"N", "c", "tau", "greek", "value", "abs_error", "log_error"});
    const bool european = config.option().is_european();
    for (std::size_t n : config.n) {
        for (double c : config.c) {
            const Mesh mesh = mesh_for(config, n, c);
            const std::size_t at = mesh.interior_index(config.spot);
            for (double tau : config.report_times()) {
                const GreeksSurface g = greeks_surface(config.option(), config.market(), mesh, tau);
                const auto ref = european && !config.reference ? european_reference(config, tau) : std::nullopt;
                const auto idx = static_cast<Eigen::Index>(at);
                const std::pair<const char*, double> values[] = {
                    {"delta", g.delta[idx]}, {"gamma", g.gamma[idx]}, {"theta", g.theta[idx]},
                    {"vega", g.vega[idx]},   {"rho", g.rho[idx]},
                };
                const std::optional<double> refs[] = {
                    ref ? std::optional{ref->delta} : std::nullopt, ref ? std::optional{ref->gamma} : std::nullopt,
                    ref ? std::optional{ref->theta} : std::nullopt, ref ? std::optional{ref->vega} : std::nullopt,
                    ref ? std::optional{ref->rho} : std::nullopt,
                };
                for (std::size_t i = 0; i < 5; ++i) {
                    const auto err = error_cells(values[i].second, refs[i]);
                    t.rows.push_back({static_cast<long long>(n), c, tau, std::string(values[i].first),
                                      values[i].second, err.abs_error, err.log_error});
                }
            }
        }
    }
    return t;
}

Table cmd_converge(const RunConfig& config)
{
    if (config.c.size() != 1)
        throw DomainError("converge sweeps N at a single c value");
    Table t = make_table(config, "converge", {"N", "c", "tau", "price", "abs_error", "log_error", "seconds"});
    const auto refs = reference_prices(config);
    const auto times = config.report_times();
    const double c = config.c.front();
    for (std::size_t n : config.n) {
        const auto start = std::chrono::steady_clock::now();
        const Mesh mesh = mesh_for(config, n, c);
        const ValueSurface surface = solve_bermudan(config.option(), config.market(), mesh, times);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (double tau : times) {
            const double v = value_at(surface, config.spot, tau);
            const auto err = error_cells(v, refs.at(tau));
            t.rows.push_back({static_cast<long long>(n), c, tau, v, err.abs_error, err.log_error, seconds});
        }
    }
    return t;
}

Table cmd_csweep(const RunConfig& config)
{
    if (config.n.size() != 1)
        throw DomainError("csweep sweeps c at a single N");
    Table t = make_table(config, "csweep", {"N", "c", "tau", "price", "abs_error", "log_error"});
    const auto refs = reference_prices(config);
    const auto times = config.report_times();
    const std::size_t n = config.n.front();
    for (double c : config.c) {
        const Mesh mesh = mesh_for(config, n, c);
        const ValueSurface surface = solve_bermudan(config.option(), config.market(), mesh, times);
        for (double tau : times) {
            const double v = value_at(surface, config.spot, tau);
            const auto err = error_cells(v, refs.at(tau));
            t.rows.push_back({static_cast<long long>(n), c, tau, v, err.abs_error, err.log_error});
        }
    }
    return t;
}

std::string render(const Table& table, OutputFormat format)
{
    if (format == OutputFormat::json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::visit(
                    [&](const auto& v) {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, std::monostate>)
                            obj[table.columns[i]] = nullptr;
                        else
                            obj[table.columns[i]] = v;
                    },
                    row[i]);
            }
            rows.push_back(std::move(obj));
        }
        nlohmann::json doc = {{"command", table.command}, {"config_hash", table.config_hash}, {"rows", rows}};
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "# molprice " << table.command << '\n';
    out << "# config_hash=" << table.config_hash << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << format_number(v);
                    else if constexpr (std::is_same_v<T, long long> || std::is_same_v<T, std::string>)
                        out << v;
                },
                row[i]);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace mol::report
