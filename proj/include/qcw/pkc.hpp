#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcw/hsp.hpp"
#include "qcw/numt.hpp"
#include "qcw/rng.hpp"

namespace qcw::pkc {

using numt::Int;

// ---------------------------------------------------------------------------
// RSA

struct RsaKeyPair {
    Int n, e;    // public
    Int p, q, d; // private
};

// Toy keys: random distinct primes of bit_size bits each (bit_size <= 12 keeps
// the simulated attacks fast).
RsaKeyPair rsa_keygen(unsigned bit_size, Rng& rng);

Int rsa_encrypt(const Int& n, const Int& e, const Int& m);
Int rsa_decrypt(const RsaKeyPair& key, const Int& c);

// Recovers a full private key from (n, e) by factoring n with shor_factor.
RsaKeyPair rsa_break_factor(const Int& n, const Int& e, Rng& rng);

// Recovers the plaintext of one ciphertext without factoring, via the order
// of c. Requires gcd(c, n) = 1.
Int rsa_break_direct(const Int& n, const Int& e, const Int& c, Rng& rng);

// ---------------------------------------------------------------------------
// Rabin

struct RabinKeyPair {
    Int n;    // public
    Int p, q; // private, both 3 mod 4
};

RabinKeyPair rabin_keygen(unsigned bit_size, Rng& rng);

// The four square roots of c modulo pq (p, q both 3 mod 4); throws
// NotAResidue when c is not a quadratic residue.
std::set<Int> rabin_sqrt(const Int& c, const Int& p, const Int& q);

Int rabin_encrypt(const Int& n, const Int& m);

// Redundancy: plaintexts must end in `redundancy_bits` zero bits; decryption
// picks the unique root carrying them and throws AmbiguousDecryption when
// zero or several roots qualify.
Int rabin_decrypt(const RabinKeyPair& key, const Int& c, unsigned redundancy_bits);

// Factors n using a decryption oracle that returns a random square root.
Int rabin_oracle_to_factor(const Int& n,
                           const std::function<Int(const Int&)>& decrypt_oracle,
                           Rng& rng, int* oracle_calls = nullptr);

// ---------------------------------------------------------------------------
// ElGamal over Z_phat^* (the group interface stays abstract through hsp::Group)

struct ElGamalKeyPair {
    Int phat;  // group modulus
    Int order; // order of alpha
    Int alpha;
    Int alpha_a; // public alpha^a
    Int a;       // private
};

ElGamalKeyPair elgamal_keygen(unsigned bit_size, Rng& rng);

struct ElGamalCiphertext {
    Int gamma, delta;
};

ElGamalCiphertext elgamal_encrypt(const ElGamalKeyPair& pub, const Int& m, Rng& rng);
Int elgamal_decrypt(const ElGamalKeyPair& key, const ElGamalCiphertext& c);

// Recovers m by computing a = dlog(alpha, alpha^a) with the quantum solver.
Int elgamal_break(const ElGamalKeyPair& pub, const ElGamalCiphertext& c, Rng& rng);

// ---------------------------------------------------------------------------
// Diffie-Hellman

struct DhParams {
    Int phat;  // modulus
    Int order; // prime order of g
    Int g;
};

struct DhTranscript {
    DhParams params;
    Int ga, gb;
};

struct DhExchange {
    DhTranscript transcript;
    Int shared_alice, shared_bob;
};

DhParams dh_params(unsigned bit_size, Rng& rng);
DhExchange dh_exchange(const DhParams& params, Rng& rng);

// Eavesdropper: recovers g^{ab} from (g, g^a, g^b) via the quantum dlog.
Int dh_break(const DhTranscript& t, Rng& rng);

// ---------------------------------------------------------------------------
// Serialization (decimal-string JSON)

std::string rsa_to_json(const RsaKeyPair& k);
std::string rabin_to_json(const RabinKeyPair& k);
std::string elgamal_to_json(const ElGamalKeyPair& k);
std::string elgamal_ct_to_json(const ElGamalCiphertext& c);
std::string dh_to_json(const DhTranscript& t);

} // namespace qcw::pkc
