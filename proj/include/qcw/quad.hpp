#pragma once

#include <string>
#include <vector>

#include "qcw/numt.hpp"
#include "qcw/rng.hpp"

namespace qcw::quad {

using numt::Int;

// Quadratic order of discriminant delta: nonsquare, 0 or 1 mod 4.
struct QuadOrder {
    Int disc;
    Int isqrt_disc;     // floor(sqrt(|disc|))
    long double sqrt_disc; // for real orders

    bool real() const { return disc > 0; }
};

QuadOrder make_order(const Int& delta);

// Primitive ideal a Z + (b + sqrt(D))/2 Z with b^2 = D (mod 4a), a > 0.
struct QuadIdeal {
    Int a, b;
    bool operator==(const QuadIdeal&) const = default;
    bool operator<(const QuadIdeal& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
};

void check_ideal(const QuadIdeal& ideal, const QuadOrder& order);

QuadIdeal unit_ideal(const QuadOrder& order);

// ---------------------------------------------------------------------------
// Imaginary class-group arithmetic (disc < 0)

bool is_reduced_imag(const QuadIdeal& f, const QuadOrder& order);
QuadIdeal reduce_imag(const QuadIdeal& f, const QuadOrder& order);

// Gauss composition followed by reduction (imaginary) or used raw as the
// product's primitive part (real; reduction handled by the caller).
QuadIdeal compose_raw(const QuadIdeal& f1, const QuadIdeal& f2, const QuadOrder& order);

QuadIdeal compose(const QuadIdeal& f1, const QuadIdeal& f2, const QuadOrder& order);
QuadIdeal ideal_inverse(const QuadIdeal& f, const QuadOrder& order);
QuadIdeal pow_reduced(const QuadIdeal& g, const Int& e, const QuadOrder& order);

struct ClassGroup {
    std::vector<QuadIdeal> elements; // all reduced primitive forms
    std::vector<std::vector<std::size_t>> table; // Cayley table
    std::size_t unit_index = 0;

    std::size_t index_of(const QuadIdeal& f) const;
    std::size_t h() const { return elements.size(); }
};

// Exhaustive enumeration of reduced primitive forms, |disc| <= 1e6.
ClassGroup class_group_brute(const QuadOrder& order);

struct BwImagExchange {
    QuadIdeal g, ga, gb;   // transcript
    Int secret_a, secret_b;
    QuadIdeal shared_alice, shared_bob;
};

BwImagExchange bw_imaginary_exchange(const QuadOrder& order, const QuadIdeal& g,
                                     Rng& rng);

// ---------------------------------------------------------------------------
// Real infrastructure (disc > 0)

// Reduced principal ideal together with its distance from the unit ideal,
// accumulated in extended precision.
struct InfraPoint {
    QuadIdeal ideal;
    long double dist = 0.0L;
};

bool is_reduced_real(const QuadIdeal& f, const QuadOrder& order);

// Distance increment of one rho step leaving `f`:
// (1/2) ln|(b + sqrt(D)) / (b - sqrt(D))|.
long double rho_increment(const QuadIdeal& f, const QuadOrder& order);

InfraPoint rho(const InfraPoint& p, const QuadOrder& order);
InfraPoint rho_inverse(const InfraPoint& p, const QuadOrder& order);

// Reduce an arbitrary primitive ideal; returns the reduced ideal and the
// total distance increment of the applied reduction steps.
std::pair<QuadIdeal, long double> reduce_real(const QuadIdeal& f, const QuadOrder& order);

// The full cycle of reduced principal ideals in distance order.
struct RealCycle {
    QuadOrder order;
    std::vector<QuadIdeal> ideals;  // ideals[0] = unit ideal
    std::vector<long double> dists; // dists[0] = 0
    long double regulator = 0.0L;

    std::size_t size() const { return ideals.size(); }
    std::size_t index_of(const QuadIdeal& f) const; // throws if absent
    long double distance_of(const QuadIdeal& f) const;
};

RealCycle build_cycle(const QuadOrder& order);

// Sum of rho increments around the principal cycle.
long double regulator_brute(const QuadOrder& order);

// Independent oracle: log of the fundamental unit from the continued
// fraction of sqrt(D) (fundamental solution of x^2 - D y^2 = +-4).
long double regulator_pell(const QuadOrder& order);

// W(x): last reduced ideal at distance <= x around the cycle (x mod R).
InfraPoint ideal_left(long double x, const RealCycle& cycle);
// e(x) = x - dist(W(x)) mod R, in [0, next gap).
long double ideal_error(long double x, const RealCycle& cycle);

// Relative forms: distances measured from `base`.
InfraPoint ideal_left_rel(long double x, const InfraPoint& base, const RealCycle& cycle);
long double ideal_error_rel(long double x, const InfraPoint& base, const RealCycle& cycle);

// Giant-step advance: repeated compose-and-reduce with exact distance
// bookkeeping, rho-corrected so the result equals the ideal to the left of
// dist(point) + x.
InfraPoint infra_advance(const InfraPoint& point, long double x, const QuadOrder& order);

struct BwRealExchange {
    Int secret_a, secret_b;
    QuadIdeal ideal_a, ideal_b;         // transcript ideals
    long double error_a, error_b;       // transcript errors
    QuadIdeal candidate_alice, candidate_bob; // pre-cleanup
    QuadIdeal shared;                   // post-cleanup agreement
    bool pre_cleanup_mismatch = false;
};

BwRealExchange bw_real_exchange(const QuadOrder& order, Rng& rng);

std::string ideal_to_json(const QuadIdeal& ideal);

} // namespace qcw::quad
