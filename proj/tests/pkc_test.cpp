#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcw/pkc.hpp"
#include "qcw/errors.hpp"

using namespace qcw;
using namespace qcw::pkc;

TEST_CASE("rsa hand-checked example: p=3 q=11 e=3") {
    RsaKeyPair k{33, 3, 3, 11, 7}; // e*d = 21 = 1 mod 20
    CHECK((k.e * k.d) % ((k.p - 1) * (k.q - 1)) == 1);
    Int c = rsa_encrypt(k.n, k.e, 4);
    CHECK(c == 31);
    CHECK(rsa_decrypt(k, c) == 4);
    CHECK(rsa_encrypt(k.n, k.e, 0) == 0);
    CHECK(rsa_decrypt(k, 0) == 0);
    CHECK(rsa_encrypt(k.n, k.e, 1) == 1);
    CHECK(rsa_decrypt(k, 1) == 1);
    CHECK_THROWS_AS(rsa_encrypt(k.n, k.e, 40), DomainError);
}

TEST_CASE("rsa roundtrip on random toy keys") {
    Rng rng(51);
    for (int kk = 0; kk < 4; ++kk) {
        RsaKeyPair key = rsa_keygen(8, rng);
        for (int i = 0; i < 125; ++i) {
            Int m = numt::uniform_int(rng, 0, key.n - 1);
            CHECK(rsa_decrypt(key, rsa_encrypt(key.n, key.e, m)) == m);
        }
    }
}

TEST_CASE("rsa_break_factor recovers a working private key") {
    Rng rng(52);
    RsaKeyPair broken = rsa_break_factor(33, 3, rng);
    CHECK(broken.d == 7);
    broken = rsa_break_factor(15, 3, rng);
    CHECK(broken.d == 3); // phi = 8, 3*3 = 9 = 1 mod 8
    broken = rsa_break_factor(77, 7, rng);
    CHECK(broken.d == 43); // 7*43 = 301 = 1 mod 60
    // e*d = 1 mod phi exactly, and decryption works.
    Rng rng2(53);
    RsaKeyPair key = rsa_keygen(7, rng2);
    RsaKeyPair rec = rsa_break_factor(key.n, key.e, rng2);
    Int phi = (key.p - 1) * (key.q - 1);
    CHECK((rec.e * rec.d) % phi == 1);
    Int m = 123 % key.n;
    CHECK(rsa_decrypt(rec, rsa_encrypt(key.n, key.e, m)) == m);
}

TEST_CASE("rsa_break_direct recovers plaintexts without factoring") {
    Rng rng(54);
    CHECK(rsa_break_direct(33, 3, 31, rng) == 4);
    CHECK(rsa_break_direct(33, 3, 1, rng) == 1);
    CHECK(rsa_break_direct(15, 3, 13, rng) == 7); // 7^3 = 343 = 13 mod 15
    // Exhaustive e-th-root oracle on a random unit message.
    RsaKeyPair key = rsa_keygen(6, rng);
    Int m = 0;
    do { m = numt::uniform_int(rng, 2, key.n - 1); } while (numt::gcd(m, key.n) != 1);
    Int c = rsa_encrypt(key.n, key.e, m);
    Int viaOrder = rsa_break_direct(key.n, key.e, c, rng);
    Int viaScan = -1;
    for (Int x = 0; x < key.n; ++x)
        if (numt::mod_pow(x, key.e, key.n) == c) { viaScan = x; break; }
    CHECK(viaOrder == viaScan);
}

TEST_CASE("rabin square roots") {
    auto roots = rabin_sqrt(4, 7, 11);
    // Squaring oracle over all residues mod 77.
    std::set<Int> expect;
    for (Int x = 0; x < 77; ++x)
        if ((x * x) % 77 == 4) expect.insert(x);
    CHECK(roots == expect);
    CHECK(roots == std::set<Int>{2, 9, 68, 75});

    roots = rabin_sqrt(1, 3, 7);
    expect.clear();
    for (Int x = 0; x < 21; ++x)
        if ((x * x) % 21 == 1) expect.insert(x);
    CHECK(roots == expect);
    CHECK(roots == std::set<Int>{1, 8, 13, 20});

    CHECK_THROWS_AS(rabin_sqrt(5, 7, 11), NotAResidue); // 5 is not a QR mod 7
}

TEST_CASE("rabin encrypt/decrypt with redundancy") {
    RabinKeyPair key{77, 7, 11};
    CHECK(rabin_encrypt(77, 9) == 4);
    auto roots = rabin_sqrt(4, 7, 11);
    CHECK(roots.count(9) == 1);
    CHECK(rabin_encrypt(77, 1) == 1);

    // 16-bit toy modulus, 4-bit suffix redundancy: a second root carries the
    // suffix with probability ~2^-3, so the roundtrip succeeds ~7/8 of the
    // time and never silently returns a wrong message.
    Rng rng(55);
    RabinKeyPair big = rabin_keygen(8, rng);
    int ok = 0, wrong = 0, trials = 1000;
    for (int i = 0; i < trials; ++i) {
        Int m = numt::uniform_int(rng, 1, big.n / 16 - 1) << 4;
        Int c = rabin_encrypt(big.n, m);
        try {
            Int got = rabin_decrypt(big, c, 4);
            if (got == m) ++ok; else ++wrong;
        } catch (const AmbiguousDecryption&) {
        }
    }
    CHECK(wrong == 0);
    CHECK(double(ok) / trials >= 0.80);

    // Wider redundancy drives the ambiguity rate below 1%.
    RabinKeyPair wide = rabin_keygen(10, rng);
    ok = 0;
    for (int i = 0; i < trials; ++i) {
        Int m = numt::uniform_int(rng, 1, wide.n / 4096 - 1) << 12;
        Int c = rabin_encrypt(wide.n, m);
        try {
            if (rabin_decrypt(wide, c, 12) == m) ++ok;
        } catch (const AmbiguousDecryption&) {
        }
    }
    CHECK(double(ok) / trials >= 0.99);
}

TEST_CASE("rabin decryption oracle factors the modulus") {
    Rng rng(56);
    RabinKeyPair key{77, 7, 11};
    auto oracle = [&](const Int& c) {
        auto roots = rabin_sqrt(c, key.p, key.q);
        std::vector<Int> v(roots.begin(), roots.end());
        return v[uniform_u64(rng, v.size())];
    };
    int total_calls = 0;
    for (int i = 0; i < 50; ++i) {
        int calls = 0;
        Int f = rabin_oracle_to_factor(77, oracle, rng, &calls);
        CHECK((f == 7 || f == 11));
        total_calls += calls;
    }
    CHECK(double(total_calls) / 50 < 6.0); // expected 2 calls per success

    RabinKeyPair k21{21, 3, 7};
    auto oracle21 = [&](const Int& c) {
        auto roots = rabin_sqrt(c, 3, 7);
        std::vector<Int> v(roots.begin(), roots.end());
        return v[uniform_u64(rng, v.size())];
    };
    for (int i = 0; i < 20; ++i) {
        Int f = rabin_oracle_to_factor(21, oracle21, rng);
        CHECK((f == 3 || f == 7));
        CHECK(21 % f == 0);
        CHECK(f > 1);
        CHECK(f < 21);
    }
}

TEST_CASE("elgamal hand-checked example") {
    // phat=23, alpha=5, a=6, k=3, m=7 -> (10, 19) -> 7.
    ElGamalKeyPair key{23, 22, 5, numt::mod_pow(5, 6, 23), 6};
    Int gamma = numt::mod_pow(5, 3, 23);
    Int delta = (7 * numt::mod_pow(key.alpha_a, 3, 23)) % 23;
    CHECK(gamma == 10);
    CHECK(delta == 19);
    CHECK(elgamal_decrypt(key, {gamma, delta}) == 7);

    // m = 1 decrypts to 1 for any k.
    Rng rng(57);
    for (int i = 0; i < 10; ++i)
        CHECK(elgamal_decrypt(key, elgamal_encrypt(key, 1, rng)) == 1);
    CHECK_THROWS_AS(elgamal_encrypt(key, 0, rng), DomainError);
    CHECK_THROWS_AS(elgamal_encrypt(key, 23, rng), DomainError);
}

TEST_CASE("elgamal roundtrip on random toy keys") {
    Rng rng(58);
    ElGamalKeyPair key = elgamal_keygen(9, rng);
    for (int i = 0; i < 500; ++i) {
        Int m = numt::uniform_int(rng, 1, key.phat - 1);
        CHECK(elgamal_decrypt(key, elgamal_encrypt(key, m, rng)) == m);
    }
}

TEST_CASE("elgamal_break recovers the plaintext") {
    Rng rng(59);
    ElGamalKeyPair key{23, 22, 5, numt::mod_pow(5, 6, 23), 6};
    ElGamalCiphertext c{10, 19};
    CHECK(elgamal_break(key, c, rng) == 7);
}

TEST_CASE("dh exchange and break") {
    Rng rng(60);
    // Hand-checked: p=23, g=5, a=6, b=3 -> shared 6.
    DhTranscript t{{23, 22, 5}, numt::mod_pow(5, 6, 23), numt::mod_pow(5, 3, 23)};
    CHECK(t.ga == 8);
    CHECK(t.gb == 10);
    CHECK(numt::mod_pow(t.gb, 6, 23) == 6);
    CHECK(dh_break(t, rng) == 6);

    DhParams params = dh_params(6, rng);
    for (int i = 0; i < 5; ++i) {
        DhExchange ex = dh_exchange(params, rng);
        CHECK(ex.shared_alice == ex.shared_bob);
        CHECK(dh_break(ex.transcript, rng) == ex.shared_alice);
    }
}

TEST_CASE("json serialization uses decimal strings") {
    RsaKeyPair k{33, 3, 3, 11, 7};
    std::string j = rsa_to_json(k);
    CHECK(j.find("\"n\":\"33\"") != std::string::npos);
    CHECK(j.find("\"d\":\"7\"") != std::string::npos);
    ElGamalCiphertext c{10, 19};
    std::string cj = elgamal_ct_to_json(c);
    CHECK(cj.find("\"gamma\":\"10\"") != std::string::npos);
    CHECK(cj.find("\"delta\":\"19\"") != std::string::npos);
}
