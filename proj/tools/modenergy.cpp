// modenergy: frame-energy sweeps, optimization tables and SER validation.
//
// Exit codes: 0 ok, 1 config error, 2 validation failure, 3 non-convergence.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modenergy/cli/commands.hpp"

namespace {

using modenergy::cli::Json;

struct Common {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> ps, d, eta;
    std::string axis, d_grid, eta_grid, m_grid;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config_path, "flat JSON scenario file");
    sub->add_option("--out", c.out, "output CSV path (default stdout)");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--ps", c.ps, "symbol-error target");
    sub->add_option("--d", c.d, "distance, m");
    sub->add_option("--eta", c.eta, "path-loss exponent");
    sub->add_option("--axis", c.axis, "sweep axis: d, eta, m, beff");
    sub->add_option("--d-grid", c.d_grid, "comma-separated distances");
    sub->add_option("--eta-grid", c.eta_grid, "comma-separated path-loss exponents");
    sub->add_option("--m-grid", c.m_grid, "comma-separated constellation sizes");
    sub->add_option("--set", c.sets, "override any config key, KEY=JSON_VALUE");
}

Json resolve(const Common& c, const std::string& profile = "carrier")
{
    namespace mc = modenergy::cli;
    Json cfg = c.config_path.empty() ? mc::default_config(profile) : mc::load_config(c.config_path);

    Json patch = Json::object();
    if (c.seed)
        patch["seed"] = *c.seed;
    if (c.ps)
        patch["ps"] = *c.ps;
    if (c.d)
        patch["d_m"] = *c.d;
    if (c.eta)
        patch["eta"] = *c.eta;
    if (!c.axis.empty())
        patch["sweep_axis"] = c.axis;
    if (!c.d_grid.empty())
        patch["d_grid"] = mc::parse_number_list(c.d_grid);
    if (!c.eta_grid.empty())
        patch["eta_grid"] = mc::parse_number_list(c.eta_grid);
    if (!c.m_grid.empty())
        patch["m_grid"] = mc::parse_number_list(c.m_grid);
    if (!c.out.empty())
        patch["out"] = c.out;
    for (const auto& kv : c.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw modenergy::config_error("--set expects KEY=VALUE, got \"" + kv + "\"");
        const std::string key = kv.substr(0, eq);
        const std::string raw = kv.substr(eq + 1);
        Json value;
        try {
            value = Json::parse(raw);
        } catch (const Json::parse_error&) {
            value = raw;   // bare strings need no quoting
        }
        patch[key] = value;
    }
    mc::apply_overrides(cfg, patch);
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    namespace mc = modenergy::cli;
    CLI::App app{"Energy consumption of modulation schemes on a duty-cycled sensor link"};
    app.require_subcommand(1);

    Common common;
    auto* sweep = app.add_subcommand("sweep", "energy breakdown along one axis");
    auto* tables = app.add_subcommand("tables", "optimization tables (III, IV, V)");
    auto* validate = app.add_subcommand("validate-ser", "Monte Carlo check of the SER bounds");
    auto* compare = app.add_subcommand("compare-ook", "energy per bit, NC-MFSK vs OOK");
    auto* optimize = app.add_subcommand("optimize", "optimum constellation per family");
    auto* dump = app.add_subcommand("config", "print the resolved configuration");

    std::string which;
    tables->add_option("which", which, "III, IV or V")->required();
    std::string ook_config;
    compare->add_option("--ook-config", ook_config, "scenario file for the OOK side");
    std::string profile = "carrier";
    dump->add_option("--profile", profile, "carrier or ook");

    for (auto* sub : {sweep, tables, validate, compare, optimize, dump})
        add_common(sub, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const Json cfg = resolve(common, dump->parsed() ? profile : "carrier");
        const std::string out = cfg.at("out").get<std::string>();
        if (sweep->parsed()) {
            modenergy::csv::write_atomically(out, mc::cmd_sweep(cfg));
        } else if (tables->parsed()) {
            modenergy::csv::write_atomically(out, mc::cmd_tables(which, cfg));
        } else if (validate->parsed()) {
            const auto res = mc::cmd_validate_ser(cfg);
            modenergy::csv::write_atomically(out, res.csv);
            if (!res.all_pass) {
                std::cerr << "validate-ser: bound violated, see FAIL rows\n";
                return 2;
            }
        } else if (compare->parsed()) {
            Json ook = ook_config.empty() ? mc::default_config("ook") : mc::load_config(ook_config);
            modenergy::csv::write_atomically(out, mc::cmd_compare_ook(cfg, ook));
        } else if (optimize->parsed()) {
            modenergy::csv::write_atomically(out, mc::cmd_optimize(cfg));
        } else if (dump->parsed()) {
            modenergy::csv::write_atomically(out, mc::emit_config(cfg));
        }
    } catch (const modenergy::convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
