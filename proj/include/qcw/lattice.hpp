#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcw/numt.hpp"

namespace qcw::lattice {

using numt::Int;
using numt::Fraction;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Fraction>;

// Rows span the lattice; entries are exact integers.
struct IntBasis {
    std::vector<IntVec> rows;

    std::size_t dim() const { return rows.size(); }
    std::size_t ambient() const { return rows.empty() ? 0 : rows[0].size(); }
};

// Throws RankError unless the rows are linearly independent.
void check_basis(const IntBasis& basis);

Int dot(const IntVec& a, const IntVec& b);
Int norm_sq(const IntVec& a);

struct Gso {
    std::vector<RatVec> bstar;          // orthogonal vectors, exact
    std::vector<std::vector<Fraction>> mu; // mu[i][j], j < i
    std::vector<Fraction> bstar_norm_sq;
};

// Exact rational Gram-Schmidt. Throws RankError on dependent rows.
Gso gram_schmidt(const IntBasis& basis);

// Exact integral LLL, delta in (1/4, 1), default 3/4. The output spans the
// same lattice (integer unimodular transform).
IntBasis lll_reduce(const IntBasis& basis, const Fraction& delta = Fraction(3, 4));

// Change-of-basis U with U * from = to, when it exists as an integer matrix.
std::optional<std::vector<IntVec>> change_of_basis(const IntBasis& from,
                                                   const IntBasis& to);

// Exact shortest nonzero vector by Fincke-Pohst enumeration (d <= 8). The
// optional coeff_bound caps |x_i|; BoundError if the certified search range
// exceeds it.
IntVec svp_brute(const IntBasis& basis,
                 std::optional<Int> coeff_bound = std::nullopt);

// Exact closest lattice vector to target.
IntVec cvp_brute(const IntBasis& basis, const IntVec& target,
                 std::optional<Int> coeff_bound = std::nullopt);

// lambda_1..lambda_d as exact squared norms (d <= 6).
std::vector<Int> successive_minima_sq_brute(const IntBasis& basis);

// lambda_2 / lambda_1 as a double.
double lattice_gap(const IntBasis& basis);

// Coefficients of a lattice vector v in a square invertible basis; throws
// DomainError when v is not in the lattice.
IntVec coefficients_in(const IntBasis& basis, const IntVec& v);

// B round(B^{-1} t^T): exact rational solve, half-away-from-zero rounding.
IntVec babai_round(const IntBasis& basis, const IntVec& target);

// Babai's nearest-plane walk along the GSO.
IntVec babai_nearest_plane(const IntBasis& basis, const IntVec& target);

// prod ||b_i|| / |det B| >= 1, equality iff the rows are orthogonal.
double orthogonality_defect(const IntBasis& basis);

// Exact determinant of a square basis.
Int determinant(const IntBasis& basis);

// Gaussian heuristic range (low, high) for dimension d, |det| = det_magnitude.
std::pair<double, double> gaussian_heuristic(double det_magnitude, std::size_t d);

// CVP-to-SVP embedding: rows [b_i | 0] plus [c | 1].
IntBasis embed_cvp(const IntBasis& basis, const IntVec& c);

// JSON array-of-arrays of decimal strings.
std::string basis_to_json(const IntBasis& basis);
IntBasis basis_from_json(const std::string& text);

} // namespace qcw::lattice
