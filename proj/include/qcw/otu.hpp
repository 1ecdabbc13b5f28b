#pragma once

#include <string>
#include <vector>

#include "qcw/numt.hpp"
#include "qcw/rng.hpp"

namespace qcw::otu {

using numt::Int;

// Degree-1 instantiation: K = Q, O_K = Z, the prime ideal is (q) with
// residue field F_q, norms are absolute values, and the unique-representative
// set R is {0, ..., q-1}. Every algorithmic step of the scheme runs verbatim;
// the imaginary-quadratic instantiation plugs in through the quad module.
struct QpkcKeyPair {
    // public
    std::size_t n = 0, k = 0;
    std::vector<Int> b;
    // private
    Int q;                // prime field size N(p)
    Int g;                // generator of F_q^*
    Int d;                // masking integer in Z_{q-1}
    std::vector<Int> p;   // pairwise-coprime subset-product base
    std::vector<Int> qexp; // discrete logs q_i with g^{q_i} = p_i
};

// Key generation; the discrete logs q_i run through the quantum dlog unless
// classical_dlog is set (deterministic tests use the classical oracle).
QpkcKeyPair qpkc_keygen(std::size_t n, std::size_t k, Rng& rng,
                        bool classical_dlog = false);

Int binomial(std::size_t n, std::size_t k);

// Combinatorial rank encoding: m in [0, C(n,k)) to a weight-k bitstring.
std::vector<int> encode_message(const Int& m, std::size_t n, std::size_t k);
Int decode_message(const std::vector<int>& s, std::size_t k);

// c = sum s_i b_i over the integers (a subset-sum instance).
Int qpkc_encrypt(const QpkcKeyPair& pub, const Int& m);
Int qpkc_decrypt(const QpkcKeyPair& key, const Int& c);

// n / log2(max b_i).
double ssp_density(const std::vector<Int>& b_values);

std::string key_to_json(const QpkcKeyPair& key);

} // namespace qcw::otu
