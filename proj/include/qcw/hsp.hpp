#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qcw/numt.hpp"
#include "qcw/rng.hpp"

namespace qcw::hsp {

using numt::Int;

// Hidden-period oracle: f(x) = f(y) iff x = y (mod r) for the hidden r.
struct PeriodicOracle {
    std::function<Int(std::uint64_t)> f;
    std::optional<std::uint64_t> period_hint;
};

// Deutsch: f(0) xor f(1) from a single oracle application.
int deutsch(const std::function<int(int)>& f);

// One run of the IHSP core: the measured value y after Fourier sampling the
// first register. Simulated through the post-measurement sparse state; the
// shortcut's distribution equals the dense two-register simulation.
std::uint64_t ihsp_sample(const PeriodicOracle& oracle, std::uint64_t m, Rng& rng);

// Bounded-period solver: two samples, continued fractions, lcm, and the
// f(0) = f(t) check. nullopt is FAIL; a non-FAIL answer is a multiple of r.
std::optional<std::uint64_t> find_period_bounded(const PeriodicOracle& oracle,
                                                 std::uint64_t r_bound, Rng& rng);

// m-doubling loop with three repetitions per m; returns exactly r.
std::uint64_t find_period(const PeriodicOracle& oracle, Rng& rng);

// Multiplicative order of a mod n via period finding. gcd(a, n) must be 1.
Int find_order(const Int& a, const Int& n, Rng& rng);

// One attempt at splitting n (odd, composite, not a prime power). nullopt is
// FAIL; a non-FAIL result is a nontrivial factor.
std::optional<Int> shor_factor(const Int& n, Rng& rng);

// Complete factorisation; even parts, primes and prime powers are handled
// classically, everything else recursively through shor_factor.
std::vector<std::pair<Int, unsigned>> full_factor(const Int& n, Rng& rng);

// Type-erased finite abelian group on encoded elements.
struct Group {
    Int id;
    std::function<Int(const Int&, const Int&)> op;
    std::function<Int(const Int&)> inv;
};

Int group_pow(const Group& g, const Int& base, const Int& exp);

// The multiplicative group Z_n^* with elements encoded as residues.
Group zn_star(const Int& n);

// Hidden-coset oracle for f(x1, x2) = a^{x1} b^{x2} in a group of prime
// order; the hidden subgroup is K = <(-k, 1)> for b = a^k.
struct DlogOracle {
    Group group;
    Int a;
    Int b;
    Int order; // prime
    // Simulator-internal: the hidden exponent, recovered lazily; the sampled
    // statistics are identical to the dense three-register simulation.
    mutable std::optional<Int> hidden_k;
};

// One PHSP core run: an ordered pair (s, t), uniform over
// T = {(s,t) : su + tv = 0 mod p for all (u,v) in K}.
std::pair<Int, Int> phsp_sample(const DlogOracle& oracle, Rng& rng);

// DLP in a prime-order group from PHSP samples (retrying until s invertible).
Int dlog_prime_order(const DlogOracle& oracle, Rng& rng);

// Pohlig-Hellman with quantum subroutines: factors the order (classically
// when classical_factor is set, for deterministic tests), computes digits
// l_j per prime power, recombines with CRT. Throws NotInSubgroup if b is
// not a power of a.
Int dlog(const Group& group, const Int& a, const Int& b, const Int& n_order,
         Rng& rng, bool classical_factor = false);

// Baby-step giant-step over an arbitrary group; classical oracle for tests
// and for simulator-internal bookkeeping.
Int dlog_bsgs_group(const Group& group, const Int& a, const Int& b, const Int& order);

} // namespace qcw::hsp
