#include "qcw/pkc.hpp"

#include <json.hpp>

#include "qcw/errors.hpp"

namespace qcw::pkc {

using nlohmann::json;

namespace {

Int random_odd_prime(unsigned bit_size, Rng& rng) {
    if (bit_size < 3 || bit_size > 14)
        throw DomainError("toy prime size out of range");
    Int lo = Int(1) << (bit_size - 1);
    Int hi = (Int(1) << bit_size) - 1;
    return numt::random_prime(rng, lo, hi);
}

} // namespace

// ---------------------------------------------------------------------------
// RSA

RsaKeyPair rsa_keygen(unsigned bit_size, Rng& rng) {
    while (true) {
        Int p = random_odd_prime(bit_size, rng);
        Int q = random_odd_prime(bit_size, rng);
        if (p == q) continue;
        Int phi = (p - 1) * (q - 1);
        Int e = 3;
        while (e < phi && numt::gcd(e, phi) != 1) e += 2;
        if (e >= phi) continue;
        Int d = numt::mod_inverse(e, phi);
        return {p * q, e, p, q, d};
    }
}

Int rsa_encrypt(const Int& n, const Int& e, const Int& m) {
    if (m < 0 || m >= n) throw DomainError("rsa_encrypt: message out of range");
    return numt::mod_pow(m, e, n);
}

Int rsa_decrypt(const RsaKeyPair& key, const Int& c) {
    return numt::mod_pow(c, key.d, key.n);
}

RsaKeyPair rsa_break_factor(const Int& n, const Int& e, Rng& rng) {
    while (true) {
        auto f = hsp::shor_factor(n, rng);
        if (!f) continue;
        Int p = *f, q = n / *f;
        Int phi = (p - 1) * (q - 1);
        Int d = numt::mod_inverse(e, phi);
        return {n, e, p, q, d};
    }
}

Int rsa_break_direct(const Int& n, const Int& e, const Int& c, Rng& rng) {
    if (numt::gcd(c, n) != 1)
        throw DomainError("rsa_break_direct: gcd(c, n) != 1");
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int r = hsp::find_order(c, n, rng);
        if (numt::gcd(e, r) != 1) continue; // cannot occur for unit plaintexts
        Int a = numt::mod_inverse(e, r);
        Int m = numt::mod_pow(c, a, n);
        if (numt::mod_pow(m, e, n) == c) return m;
    }
    throw AlgorithmFailure("rsa_break_direct: retries exhausted");
}

// ---------------------------------------------------------------------------
// Rabin

RabinKeyPair rabin_keygen(unsigned bit_size, Rng& rng) {
    while (true) {
        Int p = random_odd_prime(bit_size, rng);
        Int q = random_odd_prime(bit_size, rng);
        if (p == q || p % 4 != 3 || q % 4 != 3) continue;
        return {p * q, p, q};
    }
}

std::set<Int> rabin_sqrt(const Int& c, const Int& p, const Int& q) {
    if (p % 4 != 3 || q % 4 != 3)
        throw DomainError("rabin_sqrt: primes must be 3 mod 4");
    Int n = p * q;
    Int cm = c % n;
    if (cm < 0) cm += n;
    Int r = numt::mod_pow(cm, (p + 1) / 4, p);
    Int s = numt::mod_pow(cm, (q + 1) / 4, q);
    if ((r * r - cm) % p != 0 || (s * s - cm) % q != 0)
        throw NotAResidue("rabin_sqrt: c is not a quadratic residue");
    auto eg = numt::egcd(p, q); // ap + bq = 1
    Int x = (eg.x * p % n * s % n + eg.y * q % n * r % n) % n;
    Int y = (eg.x * p % n * s % n - eg.y * q % n * r % n) % n;
    x %= n;
    if (x < 0) x += n;
    y %= n;
    if (y < 0) y += n;
    return {x, (n - x) % n, y, (n - y) % n};
}

Int rabin_encrypt(const Int& n, const Int& m) {
    if (m < 0 || m >= n) throw DomainError("rabin_encrypt: message out of range");
    return (m * m) % n;
}

Int rabin_decrypt(const RabinKeyPair& key, const Int& c, unsigned redundancy_bits) {
    std::set<Int> roots = rabin_sqrt(c, key.p, key.q);
    Int mask = (Int(1) << redundancy_bits) - 1;
    std::vector<Int> valid;
    for (const Int& r : roots)
        if ((r & mask) == 0) valid.push_back(r);
    if (valid.size() != 1)
        throw AmbiguousDecryption("rabin_decrypt: redundancy matched " +
                                  std::to_string(valid.size()) + " roots");
    return valid[0];
}

Int rabin_oracle_to_factor(const Int& n,
                           const std::function<Int(const Int&)>& decrypt_oracle,
                           Rng& rng, int* oracle_calls) {
    if (oracle_calls) *oracle_calls = 0;
    while (true) {
        Int x = numt::uniform_int(rng, 1, n - 1);
        Int g = numt::gcd(x, n);
        if (g > 1) return g; // found a factor without the oracle
        Int c = (x * x) % n;
        Int y = decrypt_oracle(c);
        if (oracle_calls) ++*oracle_calls;
        if (y == x || y == n - x) continue; // same root, try again
        Int f = numt::gcd(x - y, n);
        if (f > 1 && f < n) return f;
    }
}

// ---------------------------------------------------------------------------
// ElGamal

ElGamalKeyPair elgamal_keygen(unsigned bit_size, Rng& rng) {
    Int phat = random_odd_prime(bit_size, rng);
    Int order = phat - 1;
    // Find a generator of Z_phat^* by checking the order factorisation.
    auto factors = numt::trial_division_factor(order);
    Int alpha = 0;
    for (Int g = 2; g < phat; ++g) {
        bool generator = true;
        for (auto& [pf, e] : factors)
            if (numt::mod_pow(g, order / pf, phat) == 1) { generator = false; break; }
        if (generator) { alpha = g; break; }
    }
    Int a = numt::uniform_int(rng, 1, order - 1);
    return {phat, order, alpha, numt::mod_pow(alpha, a, phat), a};
}

ElGamalCiphertext elgamal_encrypt(const ElGamalKeyPair& pub, const Int& m, Rng& rng) {
    if (m <= 0 || m >= pub.phat)
        throw DomainError("elgamal_encrypt: message not a group element");
    Int k = numt::uniform_int(rng, 1, pub.order - 1);
    Int gamma = numt::mod_pow(pub.alpha, k, pub.phat);
    Int delta = (m * numt::mod_pow(pub.alpha_a, k, pub.phat)) % pub.phat;
    return {gamma, delta};
}

Int elgamal_decrypt(const ElGamalKeyPair& key, const ElGamalCiphertext& c) {
    Int gamma_minus_a = numt::mod_pow(c.gamma, key.order - key.a, key.phat);
    return (gamma_minus_a * c.delta) % key.phat;
}

Int elgamal_break(const ElGamalKeyPair& pub, const ElGamalCiphertext& c, Rng& rng) {
    hsp::Group g = hsp::zn_star(pub.phat);
    Int a = hsp::dlog(g, pub.alpha, pub.alpha_a, pub.order, rng);
    Int gamma_minus_a = numt::mod_pow(c.gamma, pub.order - a, pub.phat);
    return (gamma_minus_a * c.delta) % pub.phat;
}

// ---------------------------------------------------------------------------
// Diffie-Hellman

DhParams dh_params(unsigned bit_size, Rng& rng) {
    // Safe-prime setup so <g> has prime order (phat - 1) / 2.
    while (true) {
        Int q = random_odd_prime(bit_size, rng);
        Int phat = 2 * q + 1;
        if (!numt::is_prime(phat)) continue;
        for (Int h = 2; h < phat - 1; ++h) {
            Int g = numt::mod_pow(h, 2, phat);
            if (g != 1 && numt::mod_pow(g, q, phat) == 1) return {phat, q, g};
        }
    }
}

DhExchange dh_exchange(const DhParams& params, Rng& rng) {
    Int a = numt::uniform_int(rng, 1, params.order - 1);
    Int b = numt::uniform_int(rng, 1, params.order - 1);
    Int ga = numt::mod_pow(params.g, a, params.phat);
    Int gb = numt::mod_pow(params.g, b, params.phat);
    DhExchange ex;
    ex.transcript = {params, ga, gb};
    ex.shared_alice = numt::mod_pow(gb, a, params.phat);
    ex.shared_bob = numt::mod_pow(ga, b, params.phat);
    return ex;
}

Int dh_break(const DhTranscript& t, Rng& rng) {
    hsp::Group g = hsp::zn_star(t.params.phat);
    Int a = hsp::dlog(g, t.params.g, t.ga, t.params.order, rng);
    return numt::mod_pow(t.gb, a, t.params.phat);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {
std::string dec(const Int& v) { return v.get_str(); }
} // namespace

std::string rsa_to_json(const RsaKeyPair& k) {
    json j{{"n", dec(k.n)}, {"e", dec(k.e)}, {"d", dec(k.d)},
           {"p", dec(k.p)}, {"q", dec(k.q)}};
    return j.dump();
}

std::string rabin_to_json(const RabinKeyPair& k) {
    json j{{"n", dec(k.n)}, {"p", dec(k.p)}, {"q", dec(k.q)}};
    return j.dump();
}

std::string elgamal_to_json(const ElGamalKeyPair& k) {
    json j{{"p", dec(k.phat)}, {"n", dec(k.order)}, {"g", dec(k.alpha)},
           {"ga", dec(k.alpha_a)}};
    return j.dump();
}

std::string elgamal_ct_to_json(const ElGamalCiphertext& c) {
    json j{{"gamma", dec(c.gamma)}, {"delta", dec(c.delta)}};
    return j.dump();
}

std::string dh_to_json(const DhTranscript& t) {
    json j{{"p", dec(t.params.phat)}, {"n", dec(t.params.order)},
           {"g", dec(t.params.g)}, {"ga", dec(t.ga)}, {"gb", dec(t.gb)}};
    return j.dump();
}

} // namespace qcw::pkc
