#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcw/lattice.hpp"
#include "qcw/rng.hpp"

namespace qcw::ntru {

using numt::Int;
using numt::Fraction;

// Element of Z[x]/(x^N - 1); index i holds the coefficient of x^i.
struct RingPoly {
    std::vector<long long> c;

    std::size_t n() const { return c.size(); }
    bool operator==(const RingPoly&) const = default;
};

struct NtruParams {
    std::size_t N;
    long long p, q;
    std::size_t d_f, d_g, d_r;
};

NtruParams toy7();  // N=7,  p=3, q=64,  d=2
NtruParams toy11(); // N=11, p=3, q=128, d=3

// Cyclic convolution in Z[x]/(x^N - 1).
RingPoly ring_mul(const RingPoly& a, const RingPoly& b);

RingPoly ring_add(const RingPoly& a, const RingPoly& b);
RingPoly scalar_mul(long long s, const RingPoly& a);

// Coefficientwise centered representative in [-q/2, q/2) for even q
// (and [-(q-1)/2, (q-1)/2] for odd q).
RingPoly center_mod(const RingPoly& a, long long q);
long long center_mod(long long v, long long q);

// Uniform element of L(d1, d2): d1 coefficients 1, d2 coefficients -1.
RingPoly sample_L(std::size_t N, std::size_t d1, std::size_t d2, Rng& rng);

// Inverse in (Z/modulus)[x]/(x^N - 1); modulus must be prime or a power of
// two (Hensel lifting from mod 2). nullopt when not invertible.
std::optional<RingPoly> invert_mod(const RingPoly& a, long long modulus);

struct NtruKeyPair {
    NtruParams params;
    RingPoly h;       // public
    RingPoly f;       // private
    RingPoly f_p_inv; // cached inverse of f mod p
    RingPoly g;       // kept for white-box analysis
};

NtruKeyPair ntru_keygen(const NtruParams& params, Rng& rng);

// C = (p R H + M) mod q; the caller picks R (pass std::nullopt to sample).
RingPoly ntru_encrypt(const NtruParams& params, const RingPoly& h,
                      const RingPoly& m, Rng& rng,
                      const std::optional<RingPoly>& fixed_r = std::nullopt);

RingPoly ntru_decrypt(const NtruParams& params, const RingPoly& f,
                      const RingPoly& f_p_inv, const RingPoly& c);

enum class Failure { none, wrap, gap };

// White-box classification of B = p R G + F M over the integers.
Failure classify_failure(const RingPoly& f, const RingPoly& g, const RingPoly& r,
                         const RingPoly& m, const NtruParams& params);

struct FailureRates {
    double wrap, gap;
    double wrap_ci_halfwidth, gap_ci_halfwidth; // normal-approximation 95% CI
};

FailureRates failure_rates(const NtruParams& params, std::size_t trials, Rng& rng);

// The 2N x 2N attack lattice [[alpha I, circ(H)], [0, q I]] with the rational
// alpha = num/den cleared by scaling the whole lattice by den.
lattice::IntBasis build_attack_basis(const RingPoly& h, long long q,
                                     const Int& alpha_num, const Int& alpha_den);

// argmax of alpha / (alpha^2 |F|^2 + |G|^2): alpha = |G|/|F|, returned as an
// exact rational when the ratio is a perfect square and a continued-fraction
// approximation otherwise.
Fraction optimal_alpha(const Int& norm_f_sq, const Int& norm_g_sq);

// c = sqrt(N q / (2 pi e |F| |G|)), the lattice "randomness" measure.
double randomness_constant(const NtruParams& params, double norm_f, double norm_g);

struct RecoveredKey {
    RingPoly f;
    RingPoly f_p_inv;
};

// LLL on the attack lattice, scanning short rows for a rotation (+- x^i F');
// a candidate is accepted only if it decrypts 50 probe messages.
std::optional<RecoveredKey> ntru_lattice_attack(const NtruParams& params,
                                                const RingPoly& h, Rng& rng);

std::string poly_to_json(const RingPoly& p);

} // namespace qcw::ntru
