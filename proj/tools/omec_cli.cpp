// omec: figure-data sweeps and oracle validation from the command line.

#include "config.hpp"
#include "table.hpp"
#include "validate.hpp"

#include "omec/dynamics.hpp"
#include "omec/entanglement.hpp"
#include "omec/model_core.hpp"
#include "omec/sweep.hpp"
#include "omec/tripartite.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace {

using namespace omec;
using namespace omec::cli;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr int kExitParam = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitValidation = 4;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Preset {
    SystemParams params;
    Axis axis;
    json options = json::object();
};

SystemParams coupling(double G1, double G2, double gamma) {
    SystemParams p;
    p.G1 = G1;
    p.G2 = G2;
    p.gamma = gamma;
    return p;
}

// Command-line overrides shared by the sweep commands.
struct CommonFlags {
    std::string config;
    std::string out;
    std::string svg;
    std::string preset;
    int points = 0;
    std::optional<double> min, max;
    std::string scale;
    std::optional<double> C1, C2;
    std::optional<int> cutoff;
};

void add_common(CLI::App* sub, CommonFlags& f, const std::vector<std::string>& presets, bool axis = true) {
    sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output CSV path (default stdout)");
    sub->add_option("--svg", f.svg, "also write a line chart to this path");
    if (!presets.empty())
        sub->add_option("--preset", f.preset, "parameter preset")->check(CLI::IsMember(presets));
    if (axis) {
        sub->add_option("--points", f.points, "number of sweep points")->check(CLI::PositiveNumber);
        sub->add_option("--min", f.min, "sweep start");
        sub->add_option("--max", f.max, "sweep end");
        sub->add_option("--scale", f.scale, "axis spacing")->check(CLI::IsMember({"linear", "log"}));
    }
}

RunConfig build_config(const Preset& pre, const CommonFlags& f, const std::set<std::string>& option_keys) {
    RunConfig cfg;
    cfg.params = pre.params;
    cfg.axis = pre.axis;
    cfg.options = pre.options;
    if (!f.config.empty()) load_config_file(cfg, f.config, option_keys);
    if (f.points) cfg.axis.points = f.points;
    if (f.min) cfg.axis.min = *f.min;
    if (f.max) cfg.axis.max = *f.max;
    if (!f.scale.empty()) cfg.axis.log = f.scale == "log";
    if (f.C1) cfg.options["C1"] = *f.C1;
    if (f.C2) cfg.options["C2"] = *f.C2;
    if (f.cutoff) cfg.options["cutoff"] = *f.cutoff;
    if (!f.out.empty()) cfg.out = f.out;
    if (cfg.axis.points < 2) throw InvalidParameters("points must be >= 2");
    normalize(cfg);
    validate(cfg.params);
    return cfg;
}

std::vector<double> axis_values(const Axis& a) {
    return a.log ? logspace(a.min, a.max, a.points) : linspace(a.min, a.max, a.points);
}

double opt_num(const RunConfig& cfg, const char* key) {
    const auto& v = cfg.options.at(key);
    if (!v.is_number()) throw InvalidParameters(std::string("option '") + key + "' must be a number");
    return v.get<double>();
}

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void add_meta(ResultTable& t, const std::string& cmd, const RunConfig& cfg) {
    t.meta("tool", std::string("omec ") + kVersion);
    t.meta("command", cmd);
    t.meta("timestamp", timestamp());
    t.meta("units", "rates in units of kappa1 (kappa1 = " + std::to_string(cfg.kappa1_unit) + " in the input)");
    t.meta("params", params_json(cfg.params).dump());
    if (!cfg.options.empty()) t.meta("options", cfg.options.dump());
    if (!cfg.axis.name.empty())
        t.meta("sweep", json{{"name", cfg.axis.name}, {"min", cfg.axis.min}, {"max", cfg.axis.max},
                         {"points", cfg.axis.points}, {"scale", cfg.axis.log ? "log" : "linear"}}
                        .dump());
}

void emit(const ResultTable& t, const RunConfig& cfg, const CommonFlags& f, const std::string& title,
          const std::vector<int>& ys, bool logx) {
    const std::string csv = t.to_csv();
    if (cfg.out)
        write_file(*cfg.out, csv);
    else
        std::cout << csv;
    if (!f.svg.empty()) write_file(f.svg, t.to_svg(title, ys, logx, false));
}

// Names the violated stability condition.
void require_stable(const SystemParams& p) {
    const StabilityReport st = check_stability(p);
    if (st.stable_exact) return;
    std::ostringstream os;
    os << "unstable parameters: ";
    if (st.margin <= 0)
        os << "gamma_tot = " << st.margin << " <= 0 (C2 >= C1 + 1)";
    else
        os << "drift matrix eigenvalue with real part " << st.max_real_eig
           << " > 0 (G1^2/G2^2 must exceed max(kappa1/kappa2, kappa2/kappa1))";
    throw NoSteadyState(os.str());
}

std::map<std::string, Preset> spectrum_presets() {
    return {
        {"strong", {coupling(13.3, 13.3, 1.67e-3), {"omega_over_kappa1", -30, 30, 601, false}}},
        {"resolved", {coupling(13.3, 6.7, 1.67e-3), {"omega_over_kappa1", -30, 30, 601, false}}},
        {"weak", {coupling(0.1, 0.1, 3.3e-5), {"omega_over_kappa1", -0.05, 0.05, 401, false}}},
    };
}

int cmd_spectrum(const CommonFlags& f) {
    const auto pre = spectrum_presets().at(f.preset.empty() ? "strong" : f.preset);
    RunConfig cfg = build_config(pre, f, {});
    require_stable(cfg.params);
    const auto rows = spectrum(cfg.params, axis_values(cfg.axis));
    ResultTable t({{"omega_over_kappa1", "kappa1"}, {"EN_numeric", ""}, {"R12_abs", ""}, {"R12_phase", "rad"},
                   {"n1_bar", ""}, {"n2_bar", ""}});
    add_meta(t, "spectrum", cfg);
    for (const auto& r : rows) t.add_row({r.omega, r.E_N, r.R12_abs, r.R12_phase, r.n1_bar, r.n2_bar});
    emit(t, cfg, f, "E_N vs omega", {1}, false);
    return 0;
}

std::map<std::string, Preset> c2_presets() {
    SystemParams c4000;
    SystemParams narrow2;
    narrow2.kappa2 = 1 / 1.5;
    narrow2.gamma = 1.0 / 30;
    SystemParams wide2 = narrow2;
    wide2.kappa2 = 1 / 0.75;
    return {
        {"c4000", {c4000, {"C2", 1, 4000.999, 400, true}, {{"C1", 4000.0}}}},
        {"narrow2", {narrow2, {"C2", 100, 13000, 400, true}, {{"C1", 12000.0}}}},
        {"wide2", {wide2, {"C2", 100, 13000, 400, true}, {{"C1", 12000.0}}}},
    };
}

int cmd_sweep_c2(const CommonFlags& f) {
    auto pre = c2_presets().at(f.preset.empty() ? "c4000" : f.preset);
    if ((f.preset.empty() || f.preset == "c4000") && f.C1 && !f.max) pre.axis.max = *f.C1 + 0.999;
    RunConfig cfg = build_config(pre, f, {"C1"});
    const double C1 = opt_num(cfg, "C1");
    const auto rows = sweep_c2(cfg.params, C1, axis_values(cfg.axis));
    ResultTable t({{"C2", ""}, {"EN_closed", ""}, {"EN_numeric", ""}, {"EN_intracavity", ""}, {"stable_exact", ""},
                   {"max_real_eig", "kappa1"}});
    add_meta(t, "sweep-c2", cfg);
    for (const auto& r : rows)
        t.add_row({r.C2, r.EN_closed, r.EN_numeric, r.EN_intracavity, r.stable_exact ? 1.0 : 0.0, r.max_real_eig});
    emit(t, cfg, f, "E_N vs C2", {1, 2, 3}, true);
    return 0;
}

int cmd_bandwidth(const CommonFlags& f) {
    auto presets = spectrum_presets();
    presets["weak"].axis = {"sigma_over_kappa1", 0, 2e-4, 41, false};
    presets["strong"].axis = {"sigma_over_kappa1", 0, 5, 41, false};
    presets["resolved"].axis = {"sigma_over_kappa1", 0, 5, 41, false};
    const auto pre = presets.at(f.preset.empty() ? "weak" : f.preset);
    RunConfig cfg = build_config(pre, f, {});
    require_stable(cfg.params);
    const double tau = optimal_delay(cfg.params.G1, cfg.params.kappa1);
    const auto sig = axis_values(cfg.axis);
    std::vector<std::array<double, 2>> en(sig.size());
    for_each_index(
        sig.size(),
        [&](std::size_t i) {
            FilterSpec a = cfg.filter, b = cfg.filter;
            a.sigma = b.sigma = sig[i];
            a.tau1 = 0;
            b.tau1 = tau;
            en[i] = {en_filtered(cfg.params, a), en_filtered(cfg.params, b)};
        },
        Exec::Parallel);
    ResultTable t({{"sigma_over_kappa1", "kappa1"}, {"EN_tau0", ""}, {"EN_tau_opt", ""}});
    add_meta(t, "bandwidth", cfg);
    t.meta("tau_opt", std::to_string(tau));
    for (std::size_t i = 0; i < sig.size(); ++i) t.add_row({sig[i], en[i][0], en[i][1]});
    emit(t, cfg, f, "E_N vs sigma", {1, 2}, false);
    return 0;
}

int cmd_tripartite(const CommonFlags& f) {
    Preset pre{SystemParams{}, {"C2", 0.1, 100.999, 300, true}, {{"C1", 100.0}}};
    if (f.C1 && !f.max) pre.axis.max = *f.C1 + 0.999;
    RunConfig cfg = build_config(pre, f, {"C1"});
    const double C1 = opt_num(cfg, "C1");
    const auto c2s = axis_values(cfg.axis);
    std::vector<std::array<double, 9>> out(c2s.size());
    for_each_index(
        c2s.size(),
        [&](std::size_t i) {
            out[i].fill(kNaN);
            const SystemParams p = with_cooperativities(cfg.params, C1, c2s[i]);
            if (!check_stability(p).stable_exact || below_stability_margin(C1, c2s[i])) return;
            const auto r = gr2_report(p);
            out[i] = {r.one_vs_rest[0], r.one_vs_rest[1], r.one_vs_rest[2], r.pairwise[0], r.pairwise[1],
                      r.pairwise[2], r.residual[0], r.residual[1], r.residual[2]};
        },
        Exec::Parallel);
    ResultTable t({{"C2", ""}, {"eps_1_23", ""}, {"eps_2_13", ""}, {"eps_3_12", ""}, {"eps_1_2", ""},
                   {"eps_1_3", ""}, {"eps_2_3", ""}, {"residual_1", ""}, {"residual_2", ""}, {"residual_3", ""}});
    add_meta(t, "tripartite", cfg);
    for (std::size_t i = 0; i < c2s.size(); ++i) {
        std::vector<double> row{c2s[i]};
        row.insert(row.end(), out[i].begin(), out[i].end());
        t.add_row(row);
    }
    emit(t, cfg, f, "GR2 residual entanglement vs C2", {7, 8, 9}, true);
    return 0;
}

int cmd_fock(const CommonFlags& f) {
    Preset pre{SystemParams{}, {"", 0, 1, 2, false}, {{"C1", 100.0}, {"C2", 50.0}, {"cutoff", 60}}};
    RunConfig cfg = build_config(pre, f, {"C1", "C2", "cutoff"});
    const auto& cv = cfg.options.at("cutoff");
    if (!cv.is_number_integer()) throw InvalidParameters("option 'cutoff' must be an integer");
    const auto fx = fock_expansion(opt_num(cfg, "C1"), opt_num(cfg, "C2"), cv.get<int>());
    if (fx.deficit_warning)
        std::cerr << "warning: cutoff " << fx.cutoff << " leaves norm deficit " << fx.norm_deficit << "\n";
    ResultTable t({{"p", ""}, {"q", ""}, {"coeff", ""}});
    add_meta(t, "fock", cfg);
    t.meta("occupations", json{{"N1", fx.occ.N1}, {"N2", fx.occ.N2}, {"Nm", fx.occ.Nm}}.dump());
    t.meta("norm_deficit", std::to_string(fx.norm_deficit));
    for (int p = 0; p <= fx.cutoff; ++p)
        for (int q = 0; p + q <= fx.cutoff; ++q) t.add_row({double(p), double(q), fx.coeff[p][q]});
    emit(t, cfg, f, "Fock amplitudes", {2}, false);
    return 0;
}

int cmd_nonrwa(const CommonFlags& f) {
    const Axis ax{"omega_m_over_kappa", 1, 1000, 61, true};
    const std::map<std::string, Preset> presets = {
        {"strong", {coupling(10, 10, 1e-3), ax}},
        {"weak", {coupling(0.1, 0.1, 3.3e-5), ax}},
        {"resolved", {coupling(10, 5, 1e-3), ax}},
    };
    const auto pre = presets.at(f.preset.empty() ? "weak" : f.preset);
    RunConfig cfg = build_config(pre, f, {});
    require_stable(cfg.params);
    const double rwa = en_numeric(cfg.params, 0).E_N;
    const auto wm = axis_values(cfg.axis);
    std::vector<double> full(wm.size());
    for_each_index(
        wm.size(),
        [&](std::size_t i) {
            SystemParams p = cfg.params;
            p.omega_m = wm[i] * p.kappa1;
            full[i] = en_nonrwa(p).E_N;
        },
        Exec::Parallel);
    ResultTable t({{"omega_m_over_kappa", ""}, {"EN_full", ""}, {"EN_rwa", ""}, {"delta_analytic", ""}});
    add_meta(t, "nonrwa", cfg);
    for (std::size_t i = 0; i < wm.size(); ++i)
        t.add_row({wm[i], full[i], rwa, nonrwa_correction(rwa, cfg.params.kappa1, wm[i] * cfg.params.kappa1)});
    emit(t, cfg, f, "E_N with counter-rotating terms", {1, 2}, true);
    return 0;
}

int cmd_stability(const CommonFlags& f) {
    const auto pre = c2_presets().at(f.preset.empty() ? "wide2" : f.preset);
    RunConfig cfg = build_config(pre, f, {"C1"});
    const double C1 = opt_num(cfg, "C1");
    const auto c2s = axis_values(cfg.axis);
    std::vector<StabilityReport> st(c2s.size());
    for_each_index(
        c2s.size(), [&](std::size_t i) { st[i] = check_stability(with_cooperativities(cfg.params, C1, c2s[i])); },
        Exec::Parallel);
    ResultTable t({{"C2", ""}, {"stable_exact", ""}, {"stable_approx", ""}, {"max_real_eig", "kappa1"},
                   {"gamma_tot", "kappa1"}});
    add_meta(t, "stability", cfg);
    for (std::size_t i = 0; i < c2s.size(); ++i)
        t.add_row({c2s[i], st[i].stable_exact ? 1.0 : 0.0, st[i].stable_approx ? 1.0 : 0.0, st[i].max_real_eig,
                   st[i].margin});
    emit(t, cfg, f, "largest drift eigenvalue real part vs C2", {3}, true);
    return 0;
}

int cmd_validate(const std::string& out, double perturb) {
    ValidateOptions opt;
    opt.perturb_closed = perturb;
    json rep = run_validation(opt);
    rep["tool"] = std::string("omec ") + kVersion;
    const std::string text = rep.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    for (const auto& c : rep["checks"])
        std::cerr << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
    return rep["passed"].get<bool>() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Output entanglement of a two-cavity optomechanical system"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::map<std::string, CommonFlags> flags;
    auto* spectrum = app.add_subcommand("spectrum", "E_N and squeezed-thermal parameters vs omega");
    add_common(spectrum, flags["spectrum"], {"strong", "weak", "resolved"});
    auto* sweep = app.add_subcommand("sweep-c2", "E_N at omega = 0 vs C2");
    add_common(sweep, flags["sweep-c2"], {"c4000", "narrow2", "wide2"});
    sweep->add_option("--C1", flags["sweep-c2"].C1, "cooperativity of cavity 1");
    auto* band = app.add_subcommand("bandwidth", "E_N vs filter bandwidth with and without delay");
    add_common(band, flags["bandwidth"], {"strong", "weak", "resolved"});
    auto* tri = app.add_subcommand("tripartite", "GR2 measures vs C2");
    add_common(tri, flags["tripartite"], {});
    tri->add_option("--C1", flags["tripartite"].C1, "cooperativity of cavity 1");
    auto* fock = app.add_subcommand("fock", "Fock amplitudes of the output state");
    add_common(fock, flags["fock"], {}, false);
    fock->add_option("--C1", flags["fock"].C1, "cooperativity of cavity 1");
    fock->add_option("--C2", flags["fock"].C2, "cooperativity of cavity 2");
    fock->add_option("--cutoff", flags["fock"].cutoff, "largest p + q kept")->check(CLI::PositiveNumber);
    auto* nonrwa = app.add_subcommand("nonrwa", "E_N with counter-rotating terms vs omega_m");
    add_common(nonrwa, flags["nonrwa"], {"strong", "weak", "resolved"});
    auto* stab = app.add_subcommand("stability", "exact and approximate stability vs C2");
    add_common(stab, flags["stability"], {"c4000", "narrow2", "wide2"});
    stab->add_option("--C1", flags["stability"].C1, "cooperativity of cavity 1");
    auto* val = app.add_subcommand("validate", "run the oracle suite and print a JSON report");
    std::string val_out;
    double perturb = 0;
    val->add_option("--out", val_out, "JSON report path (default stdout)");
    val->add_option("--perturb-closed", perturb, "relative error injected into the closed form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParam;
    }

    try {
        apply_thread_env();
        if (*spectrum) return cmd_spectrum(flags["spectrum"]);
        if (*sweep) return cmd_sweep_c2(flags["sweep-c2"]);
        if (*band) return cmd_bandwidth(flags["bandwidth"]);
        if (*tri) return cmd_tripartite(flags["tripartite"]);
        if (*fock) return cmd_fock(flags["fock"]);
        if (*nonrwa) return cmd_nonrwa(flags["nonrwa"]);
        if (*stab) return cmd_stability(flags["stability"]);
        if (*val) return cmd_validate(val_out, perturb);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
