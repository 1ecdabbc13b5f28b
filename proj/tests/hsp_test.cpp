#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "qcw/hsp.hpp"
#include "qcw/qsim.hpp"

using namespace qcw;
using namespace qcw::hsp;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodicOracle mod_oracle(std::uint64_t r) {
    return {[r](std::uint64_t x) { return Int(x % r); }, std::nullopt};
}

// Dense two-register IHSP distribution: the exact oracle for the sparse path.
std::vector<double> dense_ihsp_distribution(std::uint64_t r, std::uint64_t m) {
    using namespace qsim;
    std::size_t label_dim = 2;
    while (label_dim < r) label_dim <<= 1;
    Statevector s = basis_state({std::size_t(m), label_dim}, {0, 0});
    s = qft(s, 0, Direction::forward);
    s = apply_oracle(s, [r](std::size_t x) { return std::size_t(x % r); }, 0, 1);
    s = qft(s, 0, Direction::inverse);
    std::vector<double> probs(m, 0.0);
    for (std::size_t i = 0; i < s.amp.size(); ++i)
        probs[i / label_dim] += std::norm(s.amp[i]);
    return probs;
}

// Exact distribution of the sparse shortcut: mixture over coset offsets.
std::vector<double> sparse_ihsp_distribution(std::uint64_t r, std::uint64_t m) {
    using namespace qsim;
    std::vector<double> probs(m, 0.0);
    for (std::uint64_t k = 0; k < r && k < m; ++k) {
        std::uint64_t count = (m - 1 - k) / r + 1;
        std::vector<SupportPoint> sup;
        for (std::uint64_t j = 0; j < count; ++j)
            sup.push_back({k + j * r, qsim::Complex(1.0 / std::sqrt(double(count)), 0.0)});
        auto part = fourier_sample(sup, m, Direction::inverse);
        double weight = double(count) / double(m);
        for (std::uint64_t y = 0; y < m; ++y) probs[y] += weight * part[y];
    }
    return probs;
}

// Multiplicative order by exhaustive scan.
std::uint64_t order_scan(std::uint64_t a, std::uint64_t n) {
    std::uint64_t cur = a % n, r = 1;
    while (cur != 1) {
        cur = (cur * a) % n;
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("deutsch answers all four functions with one oracle application") {
    auto run = [](int f0, int f1) {
        int tables = 0;
        int last_x0 = -1;
        auto f = [&](int x) {
            if (x == 0) ++tables; // the oracle table is built once per U_f
            last_x0 = x;
            return x == 0 ? f0 : f1;
        };
        int y = deutsch(f);
        CHECK(tables == 1);
        return y;
    };
    CHECK(run(0, 0) == 0);
    CHECK(run(1, 1) == 0);
    CHECK(run(0, 1) == 1); // identity
    CHECK(run(1, 0) == 1); // negation
}

TEST_CASE("ihsp_sample: divisor period lands exactly on multiples of m/r") {
    Rng rng(21);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t y = ihsp_sample(mod_oracle(4), 64, rng);
        CHECK(y % 16 == 0);
    }
    for (int i = 0; i < 50; ++i) CHECK(ihsp_sample(mod_oracle(1), 64, rng) == 0);
}

TEST_CASE("ihsp_sample: r = 3 satisfies the QFT estimate bound empirically") {
    Rng rng(22);
    int good = 0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t y = ihsp_sample(mod_oracle(3), 64, rng);
        double yy = double(y) / 64.0;
        bool ok = false;
        for (int k = 0; k <= 3; ++k)
            if (std::abs(yy - double(k) / 3.0) <= 1.0 / 64.0) ok = true;
        good += ok;
    }
    CHECK(double(good) / trials >= 8.0 / (kPi * kPi) - 0.04);
}

TEST_CASE("sparse path equals dense two-register simulation") {
    for (std::uint64_t r = 1; r <= 8; ++r) {
        for (std::uint64_t m : {16, 64, 256}) {
            auto dense = dense_ihsp_distribution(r, m);
            auto sparse = sparse_ihsp_distribution(r, m);
            double tvd = 0.0;
            for (std::uint64_t y = 0; y < m; ++y) tvd += std::abs(dense[y] - sparse[y]);
            CHECK(tvd / 2.0 < 1e-6);
        }
    }
}

TEST_CASE("find_period_bounded examples") {
    Rng rng(23);

    // r = 1 is found immediately.
    auto t = find_period_bounded(mod_oracle(1), 4, rng);
    REQUIRE(t.has_value());
    CHECK(*t == 1);

    // r = 4, bound 10: non-FAIL outputs are multiples of 4; the exact value
    // appears at the theorem's rate (checked at scale in the acceptance run).
    int exact = 0, runs = 400, fails = 0;
    for (int i = 0; i < runs; ++i) {
        auto out = find_period_bounded(mod_oracle(4), 10, rng);
        if (!out) { ++fails; continue; }
        CHECK(*out % 4 == 0);
        exact += (*out == 4);
    }
    CHECK(double(exact) / runs >= 32.0 / std::pow(kPi, 4) - 0.08);

    // r = 6, bound 8: every non-FAIL output satisfies f(0) = f(t).
    for (int i = 0; i < 200; ++i) {
        auto out = find_period_bounded(mod_oracle(6), 8, rng);
        if (out) CHECK(*out % 6 == 0);
    }
}

TEST_CASE("find_period recovers the exact period") {
    Rng rng(24);
    PeriodicOracle two_mod_15{[](std::uint64_t x) { return numt::mod_pow(2, Int(x), 15); },
                              std::nullopt};
    CHECK(find_period(two_mod_15, rng) == 4);
    CHECK(find_period(mod_oracle(1), rng) == 1);
    PeriodicOracle seven_mod_13{[](std::uint64_t x) { return numt::mod_pow(7, Int(x), 13); },
                                std::nullopt};
    CHECK(find_period(seven_mod_13, rng) == 12);
}

TEST_CASE("find_period matches exhaustive order scan on random instances") {
    Rng rng(25);
    int done = 0;
    while (done < 200) {
        std::uint64_t n = 4 + rng() % 509;
        std::uint64_t a = 2 + rng() % (n - 2);
        std::uint64_t g = std::gcd(a, n);
        if (g != 1) continue;
        std::uint64_t want = order_scan(a, n);
        PeriodicOracle o{[a, n](std::uint64_t x) { return numt::mod_pow(a, Int(x), n); },
                         std::nullopt};
        CHECK(find_period(o, rng) == want);
        ++done;
    }
}

TEST_CASE("find_order examples") {
    Rng rng(26);
    CHECK(find_order(2, 15, rng) == 4);
    CHECK(find_order(1, 91, rng) == 1);
    CHECK(find_order(7, 15, rng) == 4);
    CHECK_THROWS_AS(find_order(6, 15, rng), DomainError);
}

TEST_CASE("shor_factor splits the classic demo integers") {
    Rng rng(27);
    auto until_success = [&](const Int& n) {
        for (int i = 0; i < 200; ++i) {
            auto f = shor_factor(n, rng);
            if (f) {
                CHECK(*f > 1);
                CHECK(*f < n);
                CHECK(n % *f == 0);
                return *f;
            }
        }
        return Int(0);
    };
    Int f15 = until_success(15);
    CHECK((f15 == 3 || f15 == 5));
    Int f21 = until_success(21);
    CHECK((f21 == 3 || f21 == 7));
    Int f35 = until_success(35);
    CHECK((f35 == 5 || f35 == 7));
}

TEST_CASE("full_factor handles even parts and prime powers classically") {
    Rng rng(28);
    auto f = full_factor(15, rng);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::make_pair(Int(3), 1u));
    CHECK(f[1] == std::make_pair(Int(5), 1u));

    f = full_factor(8, rng);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == std::make_pair(Int(2), 3u));

    f = full_factor(105, rng);
    REQUIRE(f.size() == 3);
    CHECK(f[0].first == 3);
    CHECK(f[1].first == 5);
    CHECK(f[2].first == 7);
}

TEST_CASE("phsp_sample lands in T") {
    Rng rng(29);

    // k = 0 (b is the identity): T = {(s, 0)}, membership s*(-k) + t = 0.
    DlogOracle trivial{zn_star(13), 3, 1, 3};
    for (int i = 0; i < 100; ++i) {
        auto [s, t] = phsp_sample(trivial, rng);
        CHECK(t == 0);
    }

    // r = 5, k = 2 in <10> inside Z_11^* (10... use Z_11^*, a = 4 of order 5).
    // 4^x mod 11: 4, 5, 9, 3, 1 so order 5; b = 4^2 = 5.
    DlogOracle o5{zn_star(11), 4, 5, 5};
    for (int i = 0; i < 200; ++i) {
        auto [s, t] = phsp_sample(o5, rng);
        CHECK((s * (-2) + t) % 5 == 0);
    }

    // r = 3, k = 1: uniform over the 3 elements of T (chi-square at 1e4).
    DlogOracle o3{zn_star(13), 3, 3, 3};
    std::map<std::pair<Int, Int>, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) counts[phsp_sample(o3, rng)]++;
    REQUIRE(counts.size() == 3);
    double chi2 = 0.0;
    for (auto& [st, c] : counts) {
        Int s = st.first, t = st.second;
        CHECK((s * (-1) + t) % 3 == 0);
        double e = draws / 3.0;
        chi2 += (c - e) * (c - e) / e;
    }
    CHECK(chi2 < 13.8); // 2 dof, p = 0.001
}

TEST_CASE("dlog_prime_order") {
    Rng rng(30);
    // <3> in Z_13^* has order 3; 3^2 = 9.
    DlogOracle o{zn_star(13), 3, 9, 3};
    CHECK(dlog_prime_order(o, rng) == 2);

    DlogOracle id_case{zn_star(13), 3, 1, 3};
    CHECK(dlog_prime_order(id_case, rng) == 0);

    // <2> in Z_23^* has prime order 11; match the classical oracle.
    Int b = numt::mod_pow(2, 6, 23);
    DlogOracle o11{zn_star(23), 2, b, 11};
    CHECK(dlog_prime_order(o11, rng) == numt::dlog_bsgs(2, b, 23, 11));
}

TEST_CASE("dlog via Pohlig-Hellman and CRT") {
    Rng rng(31);
    Group g23 = zn_star(23);
    CHECK(dlog(g23, 5, 8, 22, rng) == 6);
    CHECK(dlog(g23, 5, 5, 22, rng) == 1);

    Group g11 = zn_star(11);
    CHECK(dlog(g11, 2, 9, 10, rng) == numt::dlog_bsgs(2, 9, 11, 10));

    // Exactness invariant: a^k = b for random instances.
    for (int i = 0; i < 10; ++i) {
        Int p = 23;
        Int k = numt::uniform_int(rng, 0, 21);
        Int b = numt::mod_pow(5, k, p);
        Int got = dlog(g23, 5, b, 22, rng, /*classical_factor=*/true);
        CHECK(numt::mod_pow(5, got, p) == b);
    }

    CHECK_THROWS_AS(dlog(g11, 3, 7, 5, rng, true), NotInSubgroup);
}
