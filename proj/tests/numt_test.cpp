#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "qcw/numt.hpp"

using namespace qcw;
using numt::Int;
using numt::Fraction;

namespace {

// Repeated-multiplication oracle for mod_pow.
Int slow_pow(Int base, std::uint64_t exp, const Int& mod) {
    Int r = 1;
    base %= mod;
    if (base < 0) base += mod;
    for (std::uint64_t i = 0; i < exp; ++i) r = (r * base) % mod;
    return r;
}

// Exhaustive CRT oracle: scan [0, prod).
Int crt_scan(const std::vector<Int>& rs, const std::vector<Int>& ms) {
    Int prod = 1;
    for (const Int& m : ms) prod *= m;
    for (Int x = 0; x < prod; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < ms.size(); ++i)
            if ((x - rs[i]) % ms[i] != 0) { ok = false; break; }
        if (ok) return x;
    }
    return -1;
}

} // namespace

TEST_CASE("egcd examples and identity") {
    auto r = numt::egcd(7, 11);
    CHECK(r.g == 1);
    CHECK(r.x == -3);
    CHECK(r.y == 2);
    CHECK(Int(7) * r.x + Int(11) * r.y == r.g);

    r = numt::egcd(0, 5);
    CHECK(r.g == 5);
    CHECK(r.x == 0);
    CHECK(r.y == 1);

    r = numt::egcd(12, 18);
    CHECK(r.g == 6);
    CHECK(Int(12) * r.x + Int(18) * r.y == 6);
    CHECK(r.x == -1);
    CHECK(r.y == 1);

    CHECK_THROWS_AS(numt::egcd(0, 0), DomainError);
}

TEST_CASE("egcd property on random 64-bit pairs") {
    Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        Int a = numt::uniform_int(rng, 0, Int("18446744073709551615"));
        Int b = numt::uniform_int(rng, 1, Int("18446744073709551615"));
        auto r = numt::egcd(a, b);
        CHECK(r.g >= 0);
        if (a != 0) CHECK(a % r.g == 0);
        CHECK(b % r.g == 0);
        CHECK(a * r.x + b * r.y == r.g);
    }
}

TEST_CASE("mod_pow examples and oracle agreement") {
    CHECK(numt::mod_pow(4, 3, 33) == slow_pow(4, 3, 33));
    CHECK(numt::mod_pow(4, 3, 33) == 31);
    CHECK(numt::mod_pow(123, 0, 7) == 1);
    CHECK(numt::mod_pow(5, 18, 23) == slow_pow(5, 18, 23));
    CHECK(numt::mod_pow(5, 18, 23) == 6);
    CHECK_THROWS_AS(numt::mod_pow(2, 3, 1), DomainError);

    Rng rng(2);
    for (int i = 0; i < 400; ++i) {
        std::uint64_t base = rng() % 1024;
        std::uint64_t exp = rng() % 1024;
        std::uint64_t mod = 2 + rng() % 1022;
        CHECK(numt::mod_pow(base, exp, mod) == slow_pow(base, exp, mod));
    }
}

TEST_CASE("crt examples against the scan oracle") {
    CHECK(numt::crt({2, 3}, {3, 5}) == crt_scan({2, 3}, {3, 5}));
    CHECK(numt::crt({2, 3}, {3, 5}) == 8);
    CHECK(numt::crt({0}, {7}) == 0);
    CHECK(numt::crt({2, 9}, {7, 11}) == crt_scan({2, 9}, {7, 11}));
    CHECK(numt::crt({2, 9}, {7, 11}) == 9);
    CHECK_THROWS_AS(numt::crt({1, 2}, {4, 6}), DomainError);
}

TEST_CASE("crt residues reproduce") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        std::vector<Int> ms = {numt::random_prime(rng, 3, 50),
                               numt::random_prime(rng, 53, 200),
                               numt::random_prime(rng, 211, 997)};
        std::vector<Int> rs;
        for (auto& m : ms) rs.push_back(numt::uniform_int(rng, 0, m - 1));
        Int x = numt::crt(rs, ms);
        Int prod = ms[0] * ms[1] * ms[2];
        CHECK(x >= 0);
        CHECK(x < prod);
        for (std::size_t j = 0; j < ms.size(); ++j) CHECK(x % ms[j] == rs[j]);
    }
}

TEST_CASE("convergents examples") {
    auto cs = numt::convergents(Fraction(171, 512));
    bool has_third = false;
    for (auto& c : cs)
        if (c == Fraction(1, 3)) has_third = true;
    CHECK(has_third);
    // Theorem hypothesis for 1/3: |171/512 - 1/3| = 1/1536 < 1/(2*9).
    Fraction err = Fraction(171, 512) - Fraction(1, 3);
    if (err < 0) err = -err;
    CHECK(err < Fraction(1, 18));
    CHECK(cs.back() == Fraction(171, 512));

    auto half = numt::convergents(Fraction(1, 2));
    REQUIRE(half.size() == 2);
    CHECK(half[0] == Fraction(0, 1));
    CHECK(half[1] == Fraction(1, 2));

    auto zero = numt::convergents(Fraction(0, 1));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == Fraction(0, 1));
}

TEST_CASE("recover_fraction examples") {
    auto f = numt::recover_fraction(16, 64, 5);
    REQUIRE(f.has_value());
    CHECK(*f == Fraction(1, 4));

    f = numt::recover_fraction(0, 64, 5);
    REQUIRE(f.has_value());
    CHECK(*f == Fraction(0, 1));

    f = numt::recover_fraction(17, 64, 5);
    REQUIRE(f.has_value());
    CHECK(*f == Fraction(1, 4));
}

TEST_CASE("recover_fraction agrees with exhaustive search under the theorem hypothesis") {
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint64_t m = 64 << (rng() % 4);
        std::uint64_t y = rng() % m;
        // The algorithm's operating envelope: bound <= sqrt(m/2), so that a
        // 1/m error ball contains at most one fraction.
        std::uint64_t max_bound = std::uint64_t(std::sqrt(double(m) / 2.0));
        std::uint64_t bound = 2 + rng() % (max_bound - 1);
        // Exhaustive best approximation with denominator <= bound.
        Fraction target = Fraction(Int(y), Int(m));
        target.canonicalize();
        Fraction best(0, 1);
        Fraction best_err = 10;
        for (std::uint64_t b = 1; b <= bound; ++b) {
            for (std::uint64_t a = 0; a <= b; ++a) {
                Fraction c = Fraction(Int(a), Int(b));
                c.canonicalize();
                Fraction err = target - c;
                if (err < 0) err = -err;
                if (err < best_err) { best_err = err; best = c; }
            }
        }
        // Only compare when the continued-fraction theorem applies.
        Fraction hyp = best_err * 2 * best.get_den() * best.get_den();
        if (hyp < 1 && best_err * m <= 1) {
            auto got = numt::recover_fraction(y, m, bound);
            REQUIRE(got.has_value());
            CHECK(*got == best);
        }
    }
}

TEST_CASE("dlog_bsgs examples") {
    CHECK(numt::dlog_bsgs(5, 8, 23, 22) == 6);
    // Exhaustive power-scan oracle.
    Int cur = 1;
    Int expect = -1;
    for (Int k = 0; k < 22; ++k) {
        if (cur == 8) { expect = k; break; }
        cur = (cur * 5) % 23;
    }
    CHECK(expect == 6);
    CHECK(numt::dlog_bsgs(7, 1, 11, 10) == 0);
    CHECK(numt::dlog_bsgs(2, 8, 11, 10) == 3);
    CHECK_THROWS_AS(numt::dlog_bsgs(4, 7, 11, 5), NotInSubgroup);
}

TEST_CASE("trial division examples") {
    auto f = numt::trial_division_factor(15);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::make_pair(Int(3), 1u));
    CHECK(f[1] == std::make_pair(Int(5), 1u));

    f = numt::trial_division_factor(77);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::make_pair(Int(7), 1u));
    CHECK(f[1] == std::make_pair(Int(11), 1u));

    f = numt::trial_division_factor(97);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == std::make_pair(Int(97), 1u));

    f = numt::trial_division_factor(360);
    Int rebuilt = 1;
    for (auto& [p, e] : f)
        for (unsigned i = 0; i < e; ++i) rebuilt *= p;
    CHECK(rebuilt == 360);
}

TEST_CASE("roots, perfect powers, rounding") {
    CHECK(numt::kth_root_floor(26, 3) == 2);
    CHECK(numt::kth_root_floor(27, 3) == 3);
    auto pw = numt::perfect_power(729); // 3^6
    REQUIRE(pw.has_value());
    CHECK(pw->first == 3);
    CHECK(pw->second == 6);
    CHECK(!numt::perfect_power(15).has_value());

    CHECK(numt::round_to_int(Fraction(5, 2)) == 3);    // half away from zero
    CHECK(numt::round_to_int(Fraction(-5, 2)) == -3);
    CHECK(numt::round_to_int(Fraction(7, 3)) == 2);
    CHECK(numt::floor_to_int(Fraction(-7, 3)) == -3);
}

TEST_CASE("primality by trial division") {
    CHECK(numt::is_prime(2));
    CHECK(numt::is_prime(97));
    CHECK(!numt::is_prime(1));
    CHECK(!numt::is_prime(91));
    CHECK(numt::next_prime(90) == 97);
}
