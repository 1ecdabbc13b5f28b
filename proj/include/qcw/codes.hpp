#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcw/rng.hpp"

namespace qcw::codes {

// Row-major bit-packed binary matrix.
struct BitMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint64_t> bits;

    static BitMatrix zero(std::size_t r, std::size_t c);
    static BitMatrix identity(std::size_t n);

    std::size_t words_per_row() const { return (cols + 63) / 64; }
    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v);
    void xor_row(std::size_t dst, std::size_t src);

    BitMatrix mul(const BitMatrix& other) const;
    BitMatrix transpose() const;
    std::size_t rank() const;
    std::optional<BitMatrix> inverse() const;
    BitMatrix select_columns(const std::vector<std::size_t>& idx) const;

    bool operator==(const BitMatrix&) const = default;
};

using BitVec = std::vector<std::uint8_t>; // one byte per bit, toy sizes

unsigned hamming_weight(const BitVec& v);
unsigned distance(const BitVec& x, const BitVec& y);
BitVec xor_vec(const BitVec& x, const BitVec& y);

// v * M over GF(2), v of length M.rows.
BitVec mul_vec(const BitVec& v, const BitMatrix& m);

// Solve x * M = target for full-row-rank M; nullopt when inconsistent.
std::optional<BitVec> solve_left(const BitMatrix& m, const BitVec& target);

// ---------------------------------------------------------------------------
// GF(2^m), m <= 8, fixed reduction polynomials for reproducibility.

struct GF2m {
    unsigned m;
    unsigned reduction; // bit i = coefficient of x^i

    explicit GF2m(unsigned m_);
    unsigned size() const { return 1u << m; }
    unsigned add(unsigned a, unsigned b) const { return a ^ b; }
    unsigned mul(unsigned a, unsigned b) const;
    unsigned inv(unsigned a) const;
    unsigned pow(unsigned a, unsigned e) const;
};

// Polynomials over GF(2^m): coefficient vectors, index = degree.
using GFPoly = std::vector<unsigned>;

GFPoly gfpoly_mod(const GF2m& f, GFPoly a, const GFPoly& g);
GFPoly gfpoly_mul(const GF2m& f, const GFPoly& a, const GFPoly& b);
unsigned gfpoly_eval(const GF2m& f, const GFPoly& g, unsigned x);
// Inverse of a modulo g (extended Euclid); nullopt when gcd is not constant.
std::optional<GFPoly> gfpoly_inv_mod(const GF2m& f, const GFPoly& a, const GFPoly& g);
bool gfpoly_irreducible(const GF2m& f, const GFPoly& g);

// ---------------------------------------------------------------------------
// Linear codes

struct LinearCode {
    BitMatrix generator; // k x n, full row rank
    unsigned t = 0;      // guaranteed error-correcting capability
    // syndrome (packed bits) -> minimal-weight error pattern (packed bits)
    std::unordered_map<std::uint64_t, std::uint64_t> syndrome_table;
    BitMatrix parity; // (n - k) x n with G H^T = 0

    std::size_t k() const { return generator.rows; }
    std::size_t n() const { return generator.cols; }
};

// Builds the syndrome-decoding table for up to t errors; n <= 24 required.
LinearCode make_code(const BitMatrix& generator, unsigned t);

// The [7,4] Hamming code, t = 1.
LinearCode hamming74();

// Exhaustive minimum distance over all 2^k codewords (k <= 20).
unsigned min_distance(const BitMatrix& generator);

// Binary Goppa code from degree-s polynomial g over GF(2^l) and support
// alphas with g(alpha_i) != 0; dimension k >= n - l*s. The error capability
// is floor((d-1)/2) for the exhaustively verified distance d.
LinearCode goppa_code(unsigned l, const GFPoly& g, const std::vector<unsigned>& alphas);

// Deterministic toy Goppa, irreducible degree-s polynomial found by scan.
LinearCode goppa_toy(unsigned l, unsigned s, std::uint64_t seed);

// Syndrome decode: received -> codeword. Throws DecodeError on a syndrome
// outside the table.
BitVec decode(const LinearCode& code, const BitVec& received);

// ---------------------------------------------------------------------------
// McEliece

struct McElieceKey {
    BitMatrix pub;                 // Gbar = S G P
    BitMatrix s, s_inv;            // scrambler
    std::vector<std::size_t> perm; // P as a permutation of columns
    LinearCode code;
};

McElieceKey mceliece_keygen(const LinearCode& code, Rng& rng);

BitVec mceliece_encrypt(const BitMatrix& pub, const BitVec& m, unsigned t, Rng& rng);
BitVec mceliece_decrypt(const McElieceKey& key, const BitVec& c);

// w(c + m Gbar) <= t; equals "m is the true message" when distance > 2t.
bool attack_success_test(const BitVec& c, const BitVec& m_candidate,
                         const BitMatrix& pub, unsigned t);

enum class IsdMode { classical, grover };

struct IsdResult {
    BitVec message;
    std::size_t predicate_evals = 0; // oracle calls in grover mode
    std::size_t singular_skips = 0;  // classical mode only
};

// Information-set decoding: find k coordinates where the error vanishes.
IsdResult isd_attack(const BitMatrix& pub, const BitVec& c, unsigned t,
                     Rng& rng, IsdMode mode, std::size_t budget = 200000);

std::string bitmatrix_to_hex_json(const BitMatrix& m);

} // namespace qcw::codes
