#include "doctest.h"

#include "omec/entanglement.hpp"
#include "omec/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

using namespace omec;

TEST_CASE("axes") {
    const auto l = linspace(0, 1, 5);
    CHECK(l.size() == 5);
    CHECK(l[2] == 0.5);
    const auto g = logspace(1, 1e4, 5);
    CHECK(g[1] == doctest::Approx(10));
    CHECK(g.back() == 1e4);
    CHECK_THROWS_AS(linspace(0, 1, 1), InvalidParameters);
    CHECK_THROWS_AS(logspace(0, 1, 4), InvalidParameters);
}

TEST_CASE("parallel and serial runs agree bit for bit") {
    SystemParams base;
    base.N_m = 2;
    const auto c2 = logspace(1, 4000, 40);
    const auto a = sweep_c2(base, 4000, c2, true, Exec::Serial);
    const auto b = sweep_c2(base, 4000, c2, true, Exec::Parallel);
    for (std::size_t i = 0; i < c2.size(); ++i) {
        CHECK(a[i].EN_numeric == b[i].EN_numeric);
        CHECK(a[i].EN_intracavity == b[i].EN_intracavity);
    }
    const SystemParams p = SystemParams::from_cooperativities(100, 50);
    const auto s = spectrum(p, linspace(-1, 1, 21), Exec::Serial);
    const auto t = spectrum(p, linspace(-1, 1, 21), Exec::Parallel);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].E_N == t[i].E_N);
}

TEST_CASE("sweep columns") {
    const auto rows = sweep_c2(SystemParams{}, 100, {50, 100.5, 102});
    CHECK(rows[0].EN_closed == doctest::Approx(3.349696156759));
    CHECK(rows[0].EN_numeric == doctest::Approx(rows[0].EN_closed).epsilon(1e-10));
    CHECK(rows[1].stable_exact);
    CHECK_FALSE(rows[2].stable_exact);
    CHECK(std::isnan(rows[2].EN_numeric));
    CHECK(std::isnan(rows[2].EN_closed));
    CHECK(rows[2].max_real_eig > 0);
}

TEST_CASE("errors surface after the loop, lowest index first") {
    std::atomic<int> ran{0};
    try {
        for_each_index(
            8,
            [&](std::size_t i) {
                ++ran;
                if (i == 3 || i == 6) throw std::runtime_error("bad " + std::to_string(i));
            },
            Exec::Parallel);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "bad 3");
    }
    CHECK(ran == 8);
}

TEST_CASE("thread limit") {
    set_thread_limit(1);
    const auto a = spectrum(SystemParams::from_cooperativities(10, 3), {0.0, 0.01});
    set_thread_limit(0);
    CHECK(a[0].E_N == doctest::Approx(1.9571443421205));
}

TEST_CASE("unstable spectrum is refused") {
    CHECK_THROWS_AS(spectrum(SystemParams::from_cooperativities(10, 12), {0.0}), NoSteadyState);
}
