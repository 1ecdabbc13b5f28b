#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qcw/errors.hpp"
#include "qcw/rng.hpp"

namespace qcw::numt {

using Int = mpz_class;       // arbitrary-precision integer
using Fraction = mpq_class;  // exact rational, always canonicalised

struct EgcdResult {
    Int g; // gcd(a, b) >= 0
    Int x;
    Int y; // a*x + b*y = g
};

// Extended Euclid. Requires a, b not both zero.
EgcdResult egcd(const Int& a, const Int& b);

// base^exp mod modulus with 0 <= result < modulus. Throws DomainError for
// modulus < 2 or negative exponent without inverse.
Int mod_pow(const Int& base, const Int& exp, const Int& modulus);

// Modular inverse; throws DomainError when gcd(a, modulus) != 1.
Int mod_inverse(const Int& a, const Int& modulus);

// Chinese remainder: unique x in [0, prod moduli) with x = residues[i]
// (mod moduli[i]). Moduli must be pairwise coprime.
Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli);

// All continued-fraction convergents of x >= 0 in order; the last equals x
// in lowest terms.
std::vector<Fraction> convergents(const Fraction& x);

// The first convergent a/b of y/m with b <= denom_bound and
// |y/m - a/b| <= 1/m (smallest denominator on ties), or nullopt.
std::optional<Fraction> recover_fraction(const Int& y, const Int& m,
                                         const Int& denom_bound);

// Shanks baby-step giant-step: smallest k >= 0 with g^k = h (mod modulus),
// where the order of g divides `order`. Throws NotInSubgroup otherwise.
Int dlog_bsgs(const Int& g, const Int& h, const Int& modulus, const Int& order);

// Complete factorisation of n >= 2 by trial division, (prime, multiplicity)
// pairs in increasing prime order. Test oracle for the quantum paths.
std::vector<std::pair<Int, unsigned>> trial_division_factor(const Int& n);

// Deterministic primality by trial division up to sqrt(n).
bool is_prime(const Int& n);

// Smallest prime >= n (n >= 2).
Int next_prime(const Int& n);

// Uniform integer in [lo, hi] inclusive.
Int uniform_int(Rng& rng, const Int& lo, const Int& hi);

// Uniform prime in [lo, hi]; throws DomainError if the range has none.
Int random_prime(Rng& rng, const Int& lo, const Int& hi);

// floor(n^(1/k)) for n >= 0, k >= 1.
Int kth_root_floor(const Int& n, unsigned long k);

// If n = a^b for some b >= 2, returns (a, b) with b maximal (so a is not
// itself a perfect power); nullopt when n is not a perfect power.
std::optional<std::pair<Int, unsigned long>> perfect_power(const Int& n);

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Nearest integer, halves away from zero.
Int round_to_int(const Fraction& q);

Int floor_to_int(const Fraction& q);

} // namespace qcw::numt
