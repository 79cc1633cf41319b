#pragma once

// Flat JSON scenario config. Precedence: built-in profile defaults < file <
// command-line overrides. Values stay in the units the keys name (mW, dBm/Hz)
// until to_scenario(), so emit -> parse -> emit is byte-identical.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modenergy/channel.hpp"
#include "modenergy/errors.hpp"
#include "modenergy/scenario.hpp"
#include "modenergy/schemes.hpp"

namespace modenergy::cli {

using Json = nlohmann::ordered_json;

namespace detail {

inline double round_significant(double v, int digits = 12)
{
    char buf[64];
    const auto end = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits).ptr;
    double out = 0.0;
    std::from_chars(buf, end, out);
    return out;
}

inline double mw(double watts) { return round_significant(watts * 1e3); }

} // namespace detail

/// Every accepted key with its default for `profile` ("carrier" or "ook").
inline Json default_config(const std::string& profile = "carrier")
{
    if (profile != "carrier" && profile != "ook")
        throw config_error("profile must be \"carrier\" or \"ook\", got \"" + profile + "\"");
    const Scenario sc = profile == "ook" ? Scenario::ook_defaults() : Scenario::carrier_defaults();
    const RadioParameters& r = sc.radio;
    using detail::mw;

    Json j;
    j["profile"] = profile;
    j["schemes"] = profile == "ook" ? "ook" : "nc-mfsk,mqam,doqpsk";
    j["ps"] = 1e-3;
    j["d_m"] = 10.0;
    j["eta"] = 3.5;
    j["margin_db"] = sc.margin_db;
    j["ref_gain_db"] = sc.ref_gain_db;
    j["fading"] = "rayleigh";
    j["k_db"] = 10.0;
    j["omega"] = 1.0;
    j["rician_power"] = "total";
    j["n_bits"] = sc.timing.n_bits;
    j["frame_period_s"] = sc.timing.frame_period;
    j["transient_s"] = sc.timing.transient;
    j["bandwidth_hz"] = sc.timing.bandwidth;
    j["zeta"] = 1;
    j["ook_duty_cycle"] = 0.5;
    j["chi_e"] = r.chi_e;
    j["n0_dbm_per_hz"] = -180.0;
    j["p_sy_mw"] = mw(r.p_sy);
    j["p_filt_mw"] = mw(r.p_filt);
    j["p_filr_mw"] = mw(r.p_filr);
    j["p_lna_mw"] = mw(r.p_lna);
    j["p_ifa_mw"] = mw(r.p_ifa);
    j["p_ed_mw"] = mw(r.p_ed);
    j["p_adc_mw"] = mw(r.p_adc);
    j["p_dac_mw"] = mw(r.p_dac);
    j["p_mix_mw"] = mw(r.p_mix);
    j["p_pg_mw"] = mw(r.p_pg);
    j["p_int_mw"] = mw(r.p_int);
    j["alpha_fsk"] = r.alpha_fsk;
    j["alpha_oqpsk"] = r.alpha_oqpsk;
    j["alpha_ook"] = r.alpha_ook;
    j["vartheta"] = r.vartheta;
    j["sweep_axis"] = "d";
    j["d_grid"] = {1.0, 10.0, 20.0, 40.0, 80.0, 100.0, 150.0, 200.0};
    j["eta_grid"] = {2.5, 3.0, 4.0, 5.0, 6.0};
    j["m_grid"] = {2, 4, 8, 16, 32, 64};
    j["seed"] = 1;
    j["n_symbols"] = 200000;
    j["out"] = "";
    return j;
}

namespace detail {

inline bool same_kind(const Json& want, const Json& got)
{
    if (want.is_number())
        return got.is_number();
    if (want.is_array()) {
        if (!got.is_array())
            return false;
        for (const auto& v : got)
            if (!v.is_number())
                return false;
        return true;
    }
    return want.type() == got.type();
}

} // namespace detail

/// Overlays `patch` onto `base`. Unknown keys and type changes are config errors.
inline void apply_overrides(Json& base, const Json& patch)
{
    if (!patch.is_object())
        throw config_error("config must be a flat JSON object");
    for (const auto& [key, value] : patch.items()) {
        if (!base.contains(key))
            throw config_error("unknown config key \"" + key + "\"");
        if (!detail::same_kind(base[key], value))
            throw config_error("config key \"" + key + "\" has the wrong type");
        if (base[key].is_number_unsigned() && value.is_number_integer() && value.get<long long>() < 0)
            throw config_error("config key \"" + key + "\" must be non-negative");
        if (base[key].is_number_integer() && !value.is_number_integer())
            throw config_error("config key \"" + key + "\" must be an integer");
        // keep real-valued keys real so later overlays see the same kind
        base[key] = base[key].is_number_float() ? Json(value.get<double>()) : value;
    }
}

/// Defaults for the profile named in `text` (carrier if absent), overlaid with `text`.
inline Json parse_config(const std::string& text)
{
    Json patch;
    try {
        patch = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!patch.is_object())
        throw config_error("config must be a flat JSON object");
    std::string profile = "carrier";
    if (auto it = patch.find("profile"); it != patch.end()) {
        if (!it->is_string())
            throw config_error("config key \"profile\" has the wrong type");
        profile = it->get<std::string>();
    }
    Json cfg = default_config(profile);
    apply_overrides(cfg, patch);
    return cfg;
}

inline Json load_config(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw config_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

inline std::string emit_config(const Json& cfg) { return cfg.dump(2) + "\n"; }

/// Comma-separated list of numbers, for grid flags.
inline std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw config_error("empty element in list \"" + text + "\"");
        const std::string tok = item.substr(first, last - first + 1);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw config_error("not a number: \"" + tok + "\"");
        out.push_back(v);
    }
    if (out.empty())
        throw config_error("empty list");
    return out;
}

inline std::vector<std::string> scheme_names(const Json& cfg)
{
    std::vector<std::string> out;
    std::stringstream ss(cfg.at("schemes").get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "nc-mfsk" && item != "mqam" && item != "doqpsk" && item != "ook")
            throw config_error("unknown scheme \"" + item + "\"");
        out.push_back(item);
    }
    if (out.empty())
        throw config_error("no schemes selected");
    return out;
}

inline std::vector<double> grid(const Json& cfg, const std::string& key)
{
    auto v = cfg.at(key).get<std::vector<double>>();
    if (v.empty())
        throw config_error("config key \"" + key + "\" is empty");
    return v;
}

inline FadingModel fading_from(const Json& cfg)
{
    const auto kind = cfg.at("fading").get<std::string>();
    const double omega = cfg.at("omega").get<double>();
    FadingModel f;
    if (kind == "rayleigh") {
        f = Rayleigh{omega};
    } else if (kind == "rician") {
        const auto p = cfg.at("rician_power").get<std::string>();
        if (p != "total" && p != "diffuse")
            throw config_error("rician_power must be \"total\" or \"diffuse\"");
        f = Rician{cfg.at("k_db").get<double>(), omega,
                   p == "total" ? RicianPower::total : RicianPower::diffuse};
    } else {
        throw config_error("fading must be \"rayleigh\" or \"rician\"");
    }
    try {
        validate(f);
    } catch (const invalid_input& e) {
        throw config_error(e.what());
    }
    return f;
}

/// Converts to internal SI units and validates.
inline Scenario to_scenario(const Json& cfg)
{
    Scenario sc;
    sc.timing.n_bits = cfg.at("n_bits").get<std::uint64_t>();
    sc.timing.frame_period = cfg.at("frame_period_s").get<double>();
    sc.timing.transient = cfg.at("transient_s").get<double>();
    sc.timing.bandwidth = cfg.at("bandwidth_hz").get<double>();
    sc.margin_db = cfg.at("margin_db").get<double>();
    sc.ref_gain_db = cfg.at("ref_gain_db").get<double>();
    sc.fading = fading_from(cfg);

    RadioParameters& r = sc.radio;
    const auto watts = [&](const char* key) { return cfg.at(key).get<double>() * 1e-3; };
    r.chi_e = cfg.at("chi_e").get<double>();
    r.n0 = std::pow(10.0, (cfg.at("n0_dbm_per_hz").get<double>() - 30.0) / 10.0);
    r.p_sy = watts("p_sy_mw");
    r.p_filt = watts("p_filt_mw");
    r.p_filr = watts("p_filr_mw");
    r.p_lna = watts("p_lna_mw");
    r.p_ifa = watts("p_ifa_mw");
    r.p_ed = watts("p_ed_mw");
    r.p_adc = watts("p_adc_mw");
    r.p_dac = watts("p_dac_mw");
    r.p_mix = watts("p_mix_mw");
    r.p_pg = watts("p_pg_mw");
    r.p_int = watts("p_int_mw");
    r.alpha_fsk = cfg.at("alpha_fsk").get<double>();
    r.alpha_oqpsk = cfg.at("alpha_oqpsk").get<double>();
    r.alpha_ook = cfg.at("alpha_ook").get<double>();
    r.vartheta = cfg.at("vartheta").get<double>();
    try {
        sc.timing.validate();
        r.validate();
        sc.link(cfg.at("d_m").get<double>(), cfg.at("eta").get<double>()).validate();
    } catch (const invalid_input& e) {
        throw config_error(e.what());
    }
    const double ps = cfg.at("ps").get<double>();
    if (!(ps > 0.0) || !(ps < 1.0))
        throw config_error("ps must lie in (0, 1)");
    return sc;
}

} // namespace modenergy::cli
