#pragma once
// Grid kernels shared by the CLI and the benchmark. Results come back in axis
// order whatever the execution policy.

#include "omec/types.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace omec {

enum class Exec { Serial, Parallel };

// Caps OpenMP threads; n <= 0 restores the runtime default.
void set_thread_limit(int n);
// Reads OMEC_THREADS if set. Returns the limit applied, 0 if none.
int apply_thread_env();

// Calls fn(i) for i in [0, n). The first exception (lowest index) is rethrown
// after every index has run.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec);

std::vector<double> linspace(double lo, double hi, int points);
std::vector<double> logspace(double lo, double hi, int points);

struct SpectrumRow {
    double omega = 0.0;
    double E_N = 0.0;
    double R12_abs = 0.0;
    double R12_phase = 0.0;
    double n1_bar = 0.0;
    double n2_bar = 0.0;
};
std::vector<SpectrumRow> spectrum(const SystemParams& p, const std::vector<double>& omegas,
                                  Exec exec = Exec::Parallel);

struct C2Row {
    double C2 = 0.0;
    double EN_closed = 0.0;       // NaN where the closed form does not apply
    double EN_numeric = 0.0;      // NaN when unstable
    double EN_intracavity = 0.0;  // NaN when unstable
    bool stable_exact = false;
    double max_real_eig = 0.0;
};
// base supplies kappa1, kappa2, gamma and occupancies; G1, G2 follow from C1 and C2.
std::vector<C2Row> sweep_c2(const SystemParams& base, double C1, const std::vector<double>& C2s,
                            bool intracavity = true, Exec exec = Exec::Parallel);

SystemParams with_cooperativities(const SystemParams& base, double C1, double C2);

}  // namespace omec
