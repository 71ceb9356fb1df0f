#include "validate.hpp"

#include "omec/dynamics.hpp"
#include "omec/entanglement.hpp"
#include "omec/filtered_output.hpp"
#include "omec/model_core.hpp"
#include "omec/sweep.hpp"
#include "omec/tripartite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

namespace omec::cli {

using nlohmann::json;

namespace {

struct Check {
    double err = 0.0;
    int points = 0;
    std::string detail;
};

json run(const std::string& name, double tol, const std::function<Check()>& fn) {
    json j;
    j["name"] = name;
    j["tolerance"] = tol;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Check c = fn();
        j["max_error"] = c.err;
        j["points"] = c.points;
        j["passed"] = std::isfinite(c.err) && c.err <= tol;
        if (!c.detail.empty()) j["detail"] = c.detail;
    } catch (const std::exception& e) {
        j["passed"] = false;
        j["error"] = e.what();
    }
    j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return j;
}

std::vector<std::pair<double, double>> stable_grid(int n, double lo, double hi) {
    std::vector<std::pair<double, double>> g;
    const auto ax = logspace(lo, hi, n);
    for (double c1 : ax)
        for (double c2 : ax)
            if (!below_stability_margin(c1, c2)) g.emplace_back(c1, c2);
    return g;
}

double max_over(std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> e(n);
    for_each_index(n, [&](std::size_t i) { e[i] = f(i); }, Exec::Parallel);
    double m = 0;
    for (double v : e) m = std::isnan(v) ? v : std::max(m, v);
    return m;
}

}  // namespace

json run_validation(const ValidateOptions& opt) {
    json checks = json::array();

    checks.push_back(run("zero_T_closed_vs_numeric", 1e-9, [&] {
        const auto g = stable_grid(20, 1, 1e4);
        const double f = 1 + opt.perturb_closed;
        double e = max_over(g.size(), [&](std::size_t i) {
            auto [c1, c2] = g[i];
            return std::abs(f * en_zero_T_closed(c1, c2) -
                            en_numeric(SystemParams::from_cooperativities(c1, c2), 0).E_N);
        });
        return Check{e, int(g.size()), "20x20 log grid, C in [1, 1e4]"};
    }));

    checks.push_back(run("finite_T_closed_vs_numeric", 1e-8, [&] {
        const auto g = stable_grid(8, 1, 1e4);
        double e = 0;
        for (double nm : {0.5, 10.0, 100.0})
            e = std::max(e, max_over(g.size(), [&](std::size_t i) {
                auto [c1, c2] = g[i];
                SystemParams p = SystemParams::from_cooperativities(c1, c2);
                p.N_m = nm;
                return std::abs(en_finite_T_closed(c1, c2, nm) - en_numeric(p, 0).E_N);
            }));
        return Check{e, int(3 * g.size()), "N_m in {0.5, 10, 100}"};
    }));

    checks.push_back(run("squeezed_thermal_mapping", 1e-9, [&] {
        double e = 0;
        int n = 0;
        for (auto [c1, c2] : stable_grid(6, 1, 1e3))
            for (double nm : {0.0, 3.0}) {
                SystemParams p = SystemParams::from_cooperativities(c1, c2);
                p.N_m = nm;
                const auto a = map_squeezed_thermal(output_correlators(p, 0));
                const auto b = squeezed_thermal_closed(c1, c2, nm);
                const double s = 1 + a.n1_bar + a.n2_bar;
                e = std::max({e, std::abs(a.n1_bar - b.n1_bar) / s, std::abs(a.n2_bar - b.n2_bar) / s,
                              std::abs(a.R_abs() - b.R_abs())});
                ++n;
            }
        return Check{e, n, ""};
    }));

    checks.push_back(run("scattering_closed_vs_resolvent", 1e-10, [&] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0, 1);
        double e = 0;
        for (int k = 0; k < 100; ++k) {
            SystemParams p;
            p.kappa2 = 0.2 + 2 * u(rng);
            p.gamma = std::pow(10, -4 + 2 * u(rng));
            p.G1 = 3 * u(rng);
            p.G2 = p.G1 * u(rng);
            const double w = 4 * (u(rng) - 0.5);
            const auto a = scattering_rwa(p, w).entries, b = scattering_resolvent(p, w).entries;
            e = std::max(e, (a - b).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff()));
        }
        return Check{e, 100, ""};
    }));

    checks.push_back(run("metric_preservation", 1e-10, [&] {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0, 1);
        double e = 0;
        for (int k = 0; k < 100; ++k) {
            SystemParams p;
            p.kappa2 = 0.2 + 2 * u(rng);
            p.gamma = std::pow(10, -4 + 2 * u(rng));
            p.G1 = 3 * u(rng);
            p.G2 = 3 * u(rng);
            e = std::max(e, metric_defect(p, 4 * (u(rng) - 0.5)));
        }
        return Check{e, 100, "random (params, omega), no internal loss"};
    }));

    checks.push_back(run("tripartite_purity", 1e-8, [&] {
        double e = 0;
        int n = 0;
        for (auto [c1, c2] : stable_grid(5, 1, 1e3)) {
            for (double nu : output_symplectic_eigenvalues(SystemParams::from_cooperativities(c1, c2), 0)) e = std::max(e, std::abs(nu - 1));
            ++n;
        }
        return Check{e, n, "symplectic eigenvalues of the 6x6 output CM"};
    }));

    checks.push_back(run("twice_squeezed_structure", 1e-8, [&] {
        double e = 0;
        int n = 0;
        for (auto [c1, c2] : stable_grid(5, 1, 1e3)) {
            const auto r = twice_squeezed_check(SystemParams::from_cooperativities(c1, c2));
            e = std::max({e, r.fit_residual, r.cav1_after_unsqueeze, r.cav1_mech_squeezing});
            ++n;
        }
        return Check{e, n, "fit residual, cavity 1 after unsqueezing, <D1 Dm>"};
    }));

    checks.push_back(run("gr2_closed_vs_covariance", 1e-8, [&] {
        double e = 0;
        int n = 0;
        for (double c1 : {10.0, 50.0, 100.0, 200.0})
            for (double c2 : logspace(0.1, c1 + 1 - 1e-3, 12)) {
                const auto r = gr2_report(SystemParams::from_cooperativities(c1, c2));
                for (int f = 0; f < 3; ++f) {
                    const double rc = gr2_residual_closed(c1, c2, f);
                    e = std::max(e, std::abs(r.residual[f] - rc) / std::max(1.0, rc));
                    if (r.residual[f] < -1e-9) e = INFINITY;
                }
                e = std::max(e, std::abs(r.pairwise[0] - gr2_pairwise_closed(c1, c2, 0, 1)));
                e = std::max(e, std::abs(r.pairwise[2] - gr2_pairwise_closed(c1, c2, 1, 2)));
                if (std::abs(r.pairwise[1]) > 1e-10) e = INFINITY;
                ++n;
            }
        return Check{e, n, "residuals, pairwise, eps(1:3) = 0, monogamy"};
    }));

    checks.push_back(run("fock_occupations_vs_moments", 1e-9, [&] {
        double e = 0;
        int n = 0;
        for (auto [c1, c2] : stable_grid(5, 1, 1e3)) {
            const auto c = output_correlators(SystemParams::from_cooperativities(c1, c2), 0);
            const auto o = fock_occupations(c1, c2);
            e = std::max({e, std::abs(o.N1 - c.n(0, 0).real()) / (1 + o.N1),
                          std::abs(o.N2 - c.n(1, 1).real()) / (1 + o.N2),
                          std::abs(o.Nm - c.n(2, 2).real()) / (1 + o.Nm),
                          std::abs(o.N2 - o.N1 - o.Nm) / (1 + o.N2)});
            ++n;
        }
        return Check{e, n, ""};
    }));

    checks.push_back(run("lyapunov_residual", 1e-9, [&] {
        double e = 0;
        int n = 0;
        for (auto [c1, c2] : stable_grid(4, 1, 1e3))
            for (double nm : {0.0, 5.0}) {
                SystemParams p = SystemParams::from_cooperativities(c1, c2, 1.0, 0.7, 1e-2);
                p.N_m = nm;
                e = std::max(e, lyapunov_residual(p, intracavity_covariance(p)));
                ++n;
            }
        return Check{e, n, "relative residual of A V + V A^T + D"};
    }));

    checks.push_back(run("aux_cavity_adiabatic", 1e-3, [&] {
        SystemParams p = SystemParams::from_cooperativities(20, 8);
        const auto r = aux_cavity_check(p, 0.01, 1.0);
        return Check{r.adiabatic_warning ? INFINITY : r.max_rel_deviation, 41, "G_a = 0.01, kappa_a = 1"};
    }));

    checks.push_back(run("uncertainty_principle", 1e-12, [&] {
        SystemParams p;
        p.G1 = p.G2 = 0.1;
        p.gamma = 3.3e-5;
        double e = 0;
        int n = 0;
        for (double s : {0.0, 1e-5, 1e-4, 1e-3}) {
            FilterSpec f;
            f.sigma = s;
            for (double nu : filtered_symplectic_eigenvalues(p, f)) e = std::max(e, 1 - nu);
            ++n;
        }
        return Check{std::max(0.0, e), n, "filtered modes: all symplectic eigenvalues >= 1"};
    }));

    checks.push_back(run("stability_injection", 0.0, [&] {
        int missed = 0;
        for (double c1 : {10.0, 100.0, 1000.0}) {
            SystemParams p = SystemParams::from_cooperativities(c1, c1 + 2);
            if (check_stability(p).stable_exact) ++missed;
            if (en_numeric(p, 0).stable) ++missed;
            try {
                en_zero_T_closed(c1, c1 + 2);
                ++missed;
            } catch (const DomainError&) {
            }
            try {
                intracavity_covariance(p);
                ++missed;
            } catch (const NoSteadyState&) {
            }
        }
        return Check{double(missed), 3, "unstable points must be flagged"};
    }));

    bool all = true;
    for (const auto& c : checks) all = all && c["passed"].get<bool>();
    json rep;
    rep["passed"] = all;
    rep["checks"] = checks;
    if (opt.perturb_closed != 0) rep["perturb_closed"] = opt.perturb_closed;
    return rep;
}

}  // namespace omec::cli
