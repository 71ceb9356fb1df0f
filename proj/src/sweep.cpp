#include "omec/sweep.hpp"

#include "omec/entanglement.hpp"
#include "omec/filtered_output.hpp"
#include "omec/model_core.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>

namespace omec {

namespace {
int g_thread_limit = 0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

void set_thread_limit(int n) { g_thread_limit = n > 0 ? n : 0; }

int apply_thread_env() {
    const char* s = std::getenv("OMEC_THREADS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < 1) throw InvalidParameters("OMEC_THREADS must be a positive integer");
    set_thread_limit(int(v));
    return int(v);
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec) {
    std::vector<std::exception_ptr> errs(n);
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    } else {
        const int nt = g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads();
        const long long N = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long long i = 0; i < N; ++i) {
            try {
                fn(std::size_t(i));
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) throw InvalidParameters("points must be >= 2");
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) v[i] = lo + (hi - lo) * i / (points - 1);
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, int points) {
    if (!(lo > 0 && hi > 0)) throw InvalidParameters("log axis needs positive bounds");
    std::vector<double> v = linspace(std::log(lo), std::log(hi), points);
    for (double& x : v) x = std::exp(x);
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::vector<SpectrumRow> spectrum(const SystemParams& p, const std::vector<double>& omegas, Exec exec) {
    validate(p);
    const StabilityReport st = check_stability(p);
    if (!st.stable_exact) throw NoSteadyState("drift matrix has an eigenvalue with positive real part");
    std::vector<SpectrumRow> rows(omegas.size());
    for_each_index(
        omegas.size(),
        [&](std::size_t i) {
            SpectrumRow& r = rows[i];
            r.omega = omegas[i];
            const Correlators c = output_correlators(p, omegas[i]);
            r.E_N = logneg_from_cm(cm_from_correlators(c, kCavityModes));
            // Outside the squeezed-thermal family (lossy ports) the mapping is skipped.
            try {
                const SqueezedThermalParams s = map_squeezed_thermal(c);
                r.R12_abs = s.R_abs();
                r.R12_phase = s.theta;
                r.n1_bar = s.n1_bar;
                r.n2_bar = s.n2_bar;
            } catch (const MappingError&) {
                r.R12_abs = r.R12_phase = r.n1_bar = r.n2_bar = kNaN;
            }
        },
        exec);
    return rows;
}

SystemParams with_cooperativities(const SystemParams& base, double C1, double C2) {
    if (!(C1 >= 0 && C2 >= 0)) throw InvalidParameters("cooperativities must be >= 0");
    SystemParams p = base;
    p.G1 = std::sqrt(C1 * p.gamma * p.kappa1_tot() / 4);
    p.G2 = std::sqrt(C2 * p.gamma * p.kappa2_tot() / 4);
    return p;
}

std::vector<C2Row> sweep_c2(const SystemParams& base, double C1, const std::vector<double>& C2s,
                            bool intracavity, Exec exec) {
    validate(base);
    std::vector<C2Row> rows(C2s.size());
    const bool thermal_cavities = base.N_1 > 0 || base.N_2 > 0;
    for_each_index(
        C2s.size(),
        [&](std::size_t i) {
            C2Row& r = rows[i];
            r.C2 = C2s[i];
            const SystemParams p = with_cooperativities(base, C1, r.C2);
            const StabilityReport st = check_stability(p);
            r.stable_exact = st.stable_exact;
            r.max_real_eig = st.max_real_eig;
            r.EN_closed = kNaN;
            if (!thermal_cavities && !base.lossy() && !below_stability_margin(C1, r.C2) && st.stable_exact)
                r.EN_closed = base.N_m > 0 ? en_finite_T_closed(C1, r.C2, base.N_m) : en_zero_T_closed(C1, r.C2);
            if (!st.stable_exact) {
                r.EN_numeric = r.EN_intracavity = kNaN;
                return;
            }
            r.EN_numeric = en_numeric(p, 0.0).E_N;
            r.EN_intracavity = intracavity ? en_intracavity(p) : kNaN;
        },
        exec);
    return rows;
}

}  // namespace omec
