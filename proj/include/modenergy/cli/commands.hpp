#pragma once

// Subcommand bodies. Each returns the CSV text; the tool decides where it goes.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "modenergy/cli/config.hpp"
#include "modenergy/cli/csv.hpp"
#include "modenergy/energy.hpp"
#include "modenergy/mc_oracle.hpp"
#include "modenergy/optimizer.hpp"

namespace modenergy::cli {

inline const std::vector<double> table_distances{1, 10, 20, 40, 80, 100, 150, 200};
inline const std::vector<double> table_etas{2.5, 3, 4, 5, 6};

namespace detail {

inline std::string family_name(const Scheme& s)
{
    return std::visit(overloaded{
                          [](const NcMfsk&) { return std::string("nc-mfsk"); },
                          [](const Mqam&) { return std::string("mqam"); },
                          [](const DiffOqpsk&) { return std::string("doqpsk"); },
                          [](const Ook&) { return std::string("ook"); },
                      },
                      s);
}

inline std::vector<std::string> energy_cells(const EnergyBreakdown& e)
{
    return {csv::number(e.rf_tx), csv::number(e.circuit_active), csv::number(e.transient),
            csv::number(e.total)};
}

inline unsigned to_m(double v)
{
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9)
        throw config_error("constellation sizes must be positive integers");
    return static_cast<unsigned>(v);
}

/// Concrete schemes of one family for the M values in `m_grid`. Sizes the
/// family cannot take are dropped.
inline std::vector<Scheme> expand(const std::string& family, const std::vector<double>& m_grid,
                                  const Json& cfg)
{
    std::vector<Scheme> out;
    if (family == "doqpsk") {
        out.push_back(DiffOqpsk{});
    } else if (family == "ook") {
        out.push_back(Ook{cfg.at("ook_duty_cycle").get<double>()});
    } else {
        const unsigned zeta = cfg.at("zeta").get<unsigned>();
        for (double v : m_grid) {
            const unsigned m = to_m(v);
            if (family == "nc-mfsk" && m >= 2 && is_power_of_two(m))
                out.push_back(NcMfsk{m, zeta});
            else if (family == "mqam" && m >= 4)
                out.push_back(Mqam{m});
        }
    }
    for (const auto& s : out) {
        try {
            validate(s);
        } catch (const invalid_input& e) {
            throw config_error(e.what());
        }
    }
    return out;
}

} // namespace detail

/// Energy vs one axis: "d", "eta", "m" or "beff" (NC-MFSK only; rows per d in d_grid).
/// Rows are axis-major, then scheme, then M. Sizes that overrun the frame are omitted.
inline std::string cmd_sweep(const Json& cfg)
{
    const Scenario sc = to_scenario(cfg);
    const std::string axis = cfg.at("sweep_axis").get<std::string>();
    const double ps = cfg.at("ps").get<double>();
    const double d0 = cfg.at("d_m").get<double>();
    const double eta0 = cfg.at("eta").get<double>();
    const auto families = scheme_names(cfg);
    const auto m_grid = grid(cfg, "m_grid");

    csv::Table t({"axis", "axis_value", "d", "eta", "scheme", "M", "e_rf", "e_circuit",
                  "e_transient", "e_total"});
    const auto emit = [&](double axis_value, double d, double eta, const Scheme& s) {
        EnergyBreakdown e;
        try {
            e = total_frame_energy(s, ps, sc.link(d, eta), sc.fading, sc.timing, sc.radio);
        } catch (const frame_overrun&) {
            return;
        }
        std::vector<std::string> row{axis, csv::number(axis_value), csv::number(d),
                                     csv::number(eta), label(s),
                                     csv::number(constellation_size(s))};
        for (auto& c : detail::energy_cells(e))
            row.push_back(std::move(c));
        t.row(std::move(row));
    };

    if (axis == "d" || axis == "eta") {
        const auto values = grid(cfg, axis == "d" ? "d_grid" : "eta_grid");
        for (double v : values)
            for (const auto& fam : families)
                for (const auto& s : detail::expand(fam, m_grid, cfg))
                    emit(v, axis == "d" ? v : d0, axis == "eta" ? v : eta0, s);
    } else if (axis == "m") {
        for (double v : m_grid)
            for (const auto& fam : families) {
                if (fam == "doqpsk" || fam == "ook")
                    continue;
                for (const auto& s : detail::expand(fam, {v}, cfg))
                    emit(v, d0, eta0, s);
            }
    } else if (axis == "beff") {
        const auto ds = grid(cfg, "d_grid");
        for (const auto& s : detail::expand("nc-mfsk", m_grid, cfg))
            for (double d : ds)
                emit(bandwidth_efficiency(s), d, eta0, s);
    } else {
        throw config_error("sweep_axis must be one of d, eta, m, beff");
    }
    return t.str();
}

/// Optimum MQAM constellation over the (d, eta) grid.
inline std::string cmd_table_iii(const Json& cfg)
{
    const Scenario sc = to_scenario(cfg);
    const double ps = cfg.at("ps").get<double>();
    csv::Table t({"d", "eta", "M_opt", "m_max", "e_total"});
    for (double d : table_distances)
        for (double eta : table_etas) {
            const auto r = optimize_constellation(SchemeFamily::mqam, ps, sc.link(d, eta),
                                                  sc.fading, sc.timing, sc.radio);
            t.row({csv::number(d), csv::number(eta), csv::number(constellation_size(r.scheme)),
                   csv::number(r.m_max), csv::number(r.breakdown.total)});
        }
    return t.str();
}

/// Most energy-efficient of optimized NC-MFSK, optimized MQAM and DOQPSK.
inline std::string cmd_table_iv(const Json& cfg)
{
    const Scenario sc = to_scenario(cfg);
    const double ps = cfg.at("ps").get<double>();
    csv::Table t({"d", "eta", "winner", "e_winner", "nc_mfsk_M", "e_nc_mfsk", "mqam_M", "e_mqam",
                  "e_doqpsk"});
    for (double d : table_distances)
        for (double eta : table_etas) {
            const Selection sel = select_modulation(sc, d, eta, ps);
            std::string fsk_m, fsk_e, qam_m, qam_e, oq_e = "nan";
            for (const auto& r : sel.ranking) {
                const auto fam = detail::family_name(r.scheme);
                if (fam == "nc-mfsk") {
                    fsk_m = csv::number(constellation_size(r.scheme));
                    fsk_e = csv::number(r.breakdown.total);
                } else if (fam == "mqam") {
                    qam_m = csv::number(constellation_size(r.scheme));
                    qam_e = csv::number(r.breakdown.total);
                } else {
                    oq_e = csv::number(r.breakdown.total);
                }
            }
            t.row({csv::number(d), csv::number(eta), label(sel.winner.scheme),
                   csv::number(sel.winner.breakdown.total), fsk_m, fsk_e, qam_m, qam_e, oq_e});
        }
    return t.str();
}

/// Rician frame energies at eta from config, d in {10, 100}, K in {1, 10, 15} dB,
/// M in {4, 16, 64}. Omega is the diffuse power unless the config says otherwise.
inline std::string cmd_table_v(const Json& cfg, bool diffuse_normalization = true)
{
    Scenario sc = to_scenario(cfg);
    const double ps = cfg.at("ps").get<double>();
    const double eta = cfg.at("eta").get<double>();
    const double omega = cfg.at("omega").get<double>();
    csv::Table t({"d", "k_db", "M", "e_nc_mfsk", "e_mqam", "e_doqpsk"});
    for (double d : {10.0, 100.0})
        for (double k : {1.0, 10.0, 15.0}) {
            sc.fading = Rician{k, omega, diffuse_normalization ? RicianPower::diffuse
                                                               : RicianPower::total};
            const auto link = sc.link(d, eta);
            const double e_oq =
                total_frame_energy(DiffOqpsk{}, ps, link, sc.fading, sc.timing, sc.radio).total;
            for (unsigned m : {4u, 16u, 64u}) {
                const double e_fsk =
                    total_frame_energy(NcMfsk{m}, ps, link, sc.fading, sc.timing, sc.radio).total;
                const double e_qam =
                    total_frame_energy(Mqam{m}, ps, link, sc.fading, sc.timing, sc.radio).total;
                t.row({csv::number(d), csv::number(k), csv::number(m), csv::number(e_fsk),
                       csv::number(e_qam), csv::number(e_oq)});
            }
        }
    return t.str();
}

inline std::string cmd_tables(const std::string& which, const Json& cfg)
{
    if (which == "III" || which == "3")
        return cmd_table_iii(cfg);
    if (which == "IV" || which == "4")
        return cmd_table_iv(cfg);
    if (which == "V" || which == "5") {
        const auto p = cfg.at("rician_power").get<std::string>();
        return cmd_table_v(cfg, p != "total" || cfg.at("fading").get<std::string>() != "rician");
    }
    throw config_error("tables: expected III, IV or V");
}

struct ValidationOutcome {
    std::string csv;
    bool all_pass = true;
};

/// Monte Carlo vs analytic bound over the standard grid. A row passes when
/// p_hat <= bound + 3 ci; NC-BFSK over Rayleigh must also match 1/(2+gamma) within 3 ci.
inline ValidationOutcome cmd_validate_ser(const Json& cfg)
{
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    const auto n = cfg.at("n_symbols").get<std::uint64_t>();
    if (n < min_simulated_symbols)
        throw config_error("n_symbols must be at least 10000");

    const std::vector<Scheme> schemes{NcMfsk{2}, NcMfsk{4}, NcMfsk{8}, NcMfsk{16},
                                      Mqam{4},   Mqam{16},  Mqam{64},  Ook{}};
    const std::vector<std::pair<std::string, FadingModel>> fadings{
        {"rayleigh", Rayleigh{}},
        {"rician_k1", Rician{1.0}},
        {"rician_k10", Rician{10.0}},
    };
    csv::Table t({"scheme", "M", "fading", "gamma_bar", "bound", "p_hat", "ci", "pass"});
    ValidationOutcome out;
    std::uint64_t stream = 0;
    for (const auto& s : schemes)
        for (const auto& [fname, fading] : fadings)
            for (double g : {0.0, 10.0, 100.0, 1000.0}) {
                const double bound = std::holds_alternative<Rayleigh>(fading)
                                         ? ser_bound(s, g)
                                         : std::min(1.0, fading_ser_bound(s, g, fading));
                // one derived seed per point so rows are independent of grid order
                const SerEstimate est = simulate_ser(s, g, fading, n, seed + 1000003 * stream++);
                bool pass = est.p_hat <= bound + 3.0 * est.ci_halfwidth;
                if (std::holds_alternative<Rayleigh>(fading) && constellation_size(s) == 2 &&
                    std::holds_alternative<NcMfsk>(s))
                    pass = pass && std::abs(est.p_hat - 1.0 / (2.0 + g)) <=
                                       3.0 * est.ci_halfwidth + 1e-12;
                out.all_pass = out.all_pass && pass;
                t.row({label(s), csv::number(constellation_size(s)), fname, csv::number(g),
                       csv::number(bound), csv::number(est.p_hat), csv::number(est.ci_halfwidth),
                       pass ? "pass" : "FAIL"});
            }
    out.csv = t.str();
    return out;
}

/// Energy per bit of optimized NC-MFSK (carrier profile from cfg) vs OOK (UWB profile).
inline std::string cmd_compare_ook(const Json& cfg, const Json& ook_cfg)
{
    const Scenario carrier = to_scenario(cfg);
    const Scenario ook = to_scenario(ook_cfg);
    const double ps = cfg.at("ps").get<double>();
    const double eta = cfg.at("eta").get<double>();
    csv::Table t({"d", "eta", "nc_mfsk_M", "e_b_nc_mfsk", "e_b_ook", "ratio"});
    for (const auto& r : compare_per_bit(carrier, ook, ps, grid(cfg, "d_grid"), eta))
        t.row({csv::number(r.d), csv::number(eta), csv::number(r.m_fsk), csv::number(r.e_b_fsk),
               csv::number(r.e_b_ook), csv::number(r.e_b_fsk / r.e_b_ook)});
    return t.str();
}

/// Optimized constellation per family at (d_m, eta), plus the MQAM
/// term-intersection estimate.
inline std::string cmd_optimize(const Json& cfg)
{
    const Scenario sc = to_scenario(cfg);
    const double ps = cfg.at("ps").get<double>();
    const double d = cfg.at("d_m").get<double>();
    const double eta = cfg.at("eta").get<double>();
    const unsigned zeta = cfg.at("zeta").get<unsigned>();
    const auto link = sc.link(d, eta);

    csv::Table t({"d", "eta", "family", "M", "m_max", "e_rf", "e_circuit", "e_transient",
                  "e_total", "intersection_M", "regime"});
    for (auto fam : {SchemeFamily::nc_mfsk, SchemeFamily::mqam}) {
        const auto r = optimize_constellation(fam, ps, link, sc.fading, sc.timing, sc.radio,
                                              std::nullopt, fam == SchemeFamily::nc_mfsk ? zeta : 1);
        std::string root = "", regime = "";
        if (fam == SchemeFamily::mqam) {
            const auto rep = mqam_intersection_m(link, sc.radio, ps, sc.timing,
                                                 mean_square(sc.fading), r.m_max);
            root = csv::number(rep.root);
            regime = rep.regime == IntersectionRegime::lower      ? "lower"
                     : rep.regime == IntersectionRegime::interior ? "interior"
                                                                  : "upper";
        }
        std::vector<std::string> row{csv::number(d), csv::number(eta), detail::family_name(r.scheme),
                                     csv::number(constellation_size(r.scheme)),
                                     csv::number(r.m_max)};
        for (auto& c : detail::energy_cells(r.breakdown))
            row.push_back(std::move(c));
        row.push_back(root);
        row.push_back(regime);
        t.row(std::move(row));
    }
    return t.str();
}

} // namespace modenergy::cli
