#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qcw/rng.hpp"

namespace qcw::grover {

struct SearchProblem {
    std::size_t n;
    std::function<bool(std::size_t)> predicate;
    std::optional<std::size_t> marked_count_hint;
};

// Iteration count maximising the success probability sin^2((2j+1) theta),
// theta = arcsin(sqrt(marked/n)).
std::size_t optimal_iterations(std::size_t n, std::size_t marked);

// Amplitude of the marked subspace after `iters` Grover iterations on a
// uniformly started register of size n (n need not be a power of two here;
// the simulation is exact for any n).
double marked_amplitude(std::size_t n, std::size_t marked, std::size_t iters);

struct SearchResult {
    std::optional<std::size_t> index; // satisfies the predicate when present
    std::size_t oracle_calls = 0;     // U_f applications + final verifications
};

// Grover search over [0, n); the domain is padded to a power of two with
// always-false indices. Known marked count uses the optimal iteration count;
// unknown marked count uses exponentially growing random iteration counts.
SearchResult grover_search(const SearchProblem& problem, Rng& rng);

} // namespace qcw::grover
