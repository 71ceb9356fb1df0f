#include "config.hpp"

#include <fstream>

namespace omec::cli {

using nlohmann::json;

namespace {

double num(const json& v, const std::string& key) {
    if (!v.is_number()) throw InvalidParameters("config key '" + key + "' must be a number");
    return v.get<double>();
}

struct Field {
    const char* name;
    double SystemParams::*ptr;
};
constexpr Field kParamFields[] = {
    {"kappa1", &SystemParams::kappa1}, {"kappa2", &SystemParams::kappa2},
    {"kappa1_int", &SystemParams::kappa1_int}, {"kappa2_int", &SystemParams::kappa2_int},
    {"gamma", &SystemParams::gamma}, {"G1", &SystemParams::G1}, {"G2", &SystemParams::G2},
    {"omega_m", &SystemParams::omega_m}, {"N_m", &SystemParams::N_m},
    {"N_1", &SystemParams::N_1}, {"N_2", &SystemParams::N_2},
};

struct FilterField {
    const char* name;
    double FilterSpec::*ptr;
};
constexpr FilterField kFilterFields[] = {
    {"omega", &FilterSpec::omega}, {"sigma", &FilterSpec::sigma}, {"tau1", &FilterSpec::tau1},
    {"tau2", &FilterSpec::tau2}, {"tau_m", &FilterSpec::tau_m},
};

void apply_filter(FilterSpec& f, const json& j) {
    if (!j.is_object()) throw InvalidParameters("'filter' must be an object");
    for (const auto& [k, v] : j.items()) {
        bool hit = false;
        for (const auto& fld : kFilterFields)
            if (k == fld.name) f.*fld.ptr = num(v, "filter." + k), hit = true;
        if (!hit) throw InvalidParameters("unknown filter key '" + k + "'");
    }
}

void apply_axis(Axis& a, const json& j) {
    if (!j.is_object()) throw InvalidParameters("'sweep' must be an object");
    for (const auto& [k, v] : j.items()) {
        if (k == "name") {
            if (!v.is_string()) throw InvalidParameters("sweep.name must be a string");
            if (v.get<std::string>() != a.name)
                throw InvalidParameters("this command sweeps '" + a.name + "', not '" + v.get<std::string>() + "'");
        } else if (k == "min") {
            a.min = num(v, "sweep.min");
        } else if (k == "max") {
            a.max = num(v, "sweep.max");
        } else if (k == "points") {
            if (!v.is_number_integer()) throw InvalidParameters("sweep.points must be an integer");
            a.points = v.get<int>();
        } else if (k == "scale") {
            const std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s != "linear" && s != "log") throw InvalidParameters("sweep.scale must be 'linear' or 'log'");
            a.log = s == "log";
        } else {
            throw InvalidParameters("unknown sweep key '" + k + "'");
        }
    }
}

}  // namespace

void apply_json(RunConfig& cfg, const json& doc, const std::set<std::string>& option_keys) {
    if (!doc.is_object()) throw InvalidParameters("config must be a JSON object");
    for (const auto& [k, v] : doc.items()) {
        bool hit = false;
        for (const auto& fld : kParamFields)
            if (k == fld.name) cfg.params.*fld.ptr = num(v, k), hit = true;
        if (hit) continue;
        if (k == "filter") {
            apply_filter(cfg.filter, v);
        } else if (k == "sweep") {
            apply_axis(cfg.axis, v);
        } else if (k == "out") {
            if (!v.is_string()) throw InvalidParameters("'out' must be a string");
            cfg.out = v.get<std::string>();
        } else if (option_keys.count(k)) {
            cfg.options[k] = v;
        } else {
            throw InvalidParameters("unknown config key '" + k + "'");
        }
    }
}

void load_config_file(RunConfig& cfg, const std::string& path, const std::set<std::string>& option_keys) {
    std::ifstream f(path);
    if (!f) throw InvalidParameters("cannot read config file: " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw InvalidParameters(std::string("config is not valid JSON: ") + e.what());
    }
    apply_json(cfg, doc, option_keys);
}

void normalize(RunConfig& cfg) {
    SystemParams& p = cfg.params;
    const double k = p.kappa1;
    if (!(k > 0)) throw InvalidParameters("kappa1 must be positive");
    cfg.kappa1_unit = k;
    for (double* r : {&p.kappa1, &p.kappa2, &p.kappa1_int, &p.kappa2_int, &p.gamma, &p.G1, &p.G2, &p.omega_m})
        *r /= k;
    cfg.filter.omega /= k;
    cfg.filter.sigma /= k;
    cfg.filter.tau1 *= k;
    cfg.filter.tau2 *= k;
    cfg.filter.tau_m *= k;
}

json params_json(const SystemParams& p) {
    json j = json::object();
    for (const auto& fld : kParamFields) j[fld.name] = p.*fld.ptr;
    return j;
}

json filter_json(const FilterSpec& f) {
    json j = json::object();
    for (const auto& fld : kFilterFields) j[fld.name] = f.*fld.ptr;
    return j;
}

}  // namespace omec::cli
