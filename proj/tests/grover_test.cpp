#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qcw/grover.hpp"
#include "qcw/errors.hpp"

using namespace qcw;
using namespace qcw::grover;

namespace {

// Literal dense simulation: the oracle for the two-value fast path.
double dense_marked_mass(std::size_t n, const std::vector<bool>& marked,
                         std::size_t iters) {
    std::vector<double> amp(n, 1.0 / std::sqrt(double(n)));
    for (std::size_t j = 0; j < iters; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            if (marked[i]) amp[i] = -amp[i];
        double mean = 0.0;
        for (double a : amp) mean += a;
        mean /= double(n);
        for (double& a : amp) a = 2.0 * mean - a;
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (marked[i]) mass += amp[i] * amp[i];
    return mass;
}

} // namespace

TEST_CASE("optimal_iterations matches the success-probability sweep") {
    CHECK(optimal_iterations(4, 1) == 1);
    CHECK(optimal_iterations(1, 1) == 0);
    CHECK(optimal_iterations(16, 1) == 3);
    CHECK_THROWS_AS(optimal_iterations(8, 0), DomainError);

    // Sweep oracle: the returned count maximises success within the first
    // quarter period.
    for (std::size_t n : {4, 16, 64, 256}) {
        for (std::size_t marked : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
            std::size_t got = optimal_iterations(n, marked);
            double theta = std::asin(std::sqrt(double(marked) / double(n)));
            std::size_t window = std::size_t(M_PI / (2.0 * theta)) + 1;
            double best = -1.0;
            for (std::size_t j = 0; j <= window; ++j)
                best = std::max(best, std::pow(std::sin((2.0 * j + 1.0) * theta), 2));
            double p_got = std::pow(std::sin((2.0 * got + 1.0) * theta), 2);
            CHECK(p_got >= best - 1e-9);
        }
    }

    // n = 16, one marked: p ~ 0.961 at 3 iterations.
    double p3 = std::pow(marked_amplitude(16, 1, 3), 2);
    CHECK(p3 == doctest::Approx(0.9613).epsilon(0.001));
}

TEST_CASE("two-value iteration equals dense simulation and the sine closed form") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 4 << (rng() % 9); // up to 1024
        std::size_t m = 1 + rng() % (n / 2);
        std::size_t iters = rng() % 12;
        std::vector<bool> marked(n, false);
        std::size_t placed = 0;
        while (placed < m) {
            std::size_t i = rng() % n;
            if (!marked[i]) { marked[i] = true; ++placed; }
        }
        double amp = marked_amplitude(n, m, iters);
        double theta = std::asin(std::sqrt(double(m) / double(n)));
        CHECK(std::abs(amp - std::sin((2.0 * iters + 1.0) * theta)) < 1e-9);
        CHECK(std::abs(amp * amp - dense_marked_mass(n, marked, iters)) < 1e-9);
    }
}

TEST_CASE("grover_search finds the marked index") {
    Rng rng(42);

    // n = 4, one marked: the single iteration is exact.
    SearchProblem p4{4, [](std::size_t i) { return i == 2; }, 1};
    for (int i = 0; i < 200; ++i) {
        auto r = grover_search(p4, rng);
        REQUIRE(r.index.has_value());
        CHECK(*r.index == 2);
    }

    // All marked: iteration budget 0, a verification call only.
    SearchProblem all{8, [](std::size_t) { return true; }, 8};
    auto r = grover_search(all, rng);
    REQUIRE(r.index.has_value());
    CHECK(r.oracle_calls == 1);

    // Unknown marked count still succeeds.
    SearchProblem unk{64, [](std::size_t i) { return i == 17; }, std::nullopt};
    int found = 0;
    for (int i = 0; i < 50; ++i) {
        auto res = grover_search(unk, rng);
        if (res.index) {
            CHECK(*res.index == 17);
            ++found;
        }
    }
    CHECK(found >= 48);
}

TEST_CASE("per-attempt success frequency matches sin^2((2j+1) theta)") {
    Rng rng(43);
    // n = 16, one marked, 3 iterations: first attempt succeeds with
    // probability ~0.961, in which case exactly 4 oracle calls are spent.
    SearchProblem p{16, [](std::size_t i) { return i == 11; }, 1};
    int first_try = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        auto r = grover_search(p, rng);
        REQUIRE(r.index.has_value());
        if (r.oracle_calls == 4) ++first_try;
    }
    CHECK(std::abs(double(first_try) / trials - 0.9613) < 0.02);
}

TEST_CASE("search never returns a false index") {
    Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 5 + rng() % 60; // deliberately not a power of two
        std::size_t target = rng() % n;
        SearchProblem p{n, [target](std::size_t i) { return i % 7 == target % 7; },
                        std::nullopt};
        auto r = grover_search(p, rng);
        if (r.index) CHECK(*r.index % 7 == target % 7);
    }
}
