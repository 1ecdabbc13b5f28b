#include "qcw/grover.hpp"

#include <cmath>
#include <vector>

#include "qcw/errors.hpp"

namespace qcw::grover {

namespace {

// Amplitudes are uniform within the marked and unmarked classes, so the
// dense state collapses to two values.
struct TwoValueState {
    double marked;
    double unmarked;
};

TwoValueState iterate(std::size_t n, std::size_t marked, std::size_t iters) {
    double nn = double(n);
    TwoValueState s{1.0 / std::sqrt(nn), 1.0 / std::sqrt(nn)};
    double m = double(marked);
    for (std::size_t i = 0; i < iters; ++i) {
        s.marked = -s.marked;
        double mean = (m * s.marked + (nn - m) * s.unmarked) / nn;
        s.marked = 2.0 * mean - s.marked;
        s.unmarked = 2.0 * mean - s.unmarked;
    }
    return s;
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

} // namespace

std::size_t optimal_iterations(std::size_t n, std::size_t marked) {
    if (marked == 0) throw DomainError("optimal_iterations: no marked elements");
    if (marked > n) throw DomainError("optimal_iterations: marked > n");
    double theta = std::asin(std::sqrt(double(marked) / double(n)));
    return std::size_t(std::floor(M_PI / (4.0 * theta)));
}

double marked_amplitude(std::size_t n, std::size_t marked, std::size_t iters) {
    if (marked == 0 || marked > n) throw DomainError("marked_amplitude: bad count");
    TwoValueState s = iterate(n, marked, iters);
    return std::sqrt(double(marked)) * s.marked;
}

SearchResult grover_search(const SearchProblem& problem, Rng& rng) {
    if (problem.n == 0) throw DomainError("grover_search: empty domain");
    std::size_t big_n = next_pow2(problem.n);
    auto pred = [&](std::size_t i) { return i < problem.n && problem.predicate(i); };

    // Nature's bookkeeping: the simulator needs the marked set to sample the
    // final register. These evaluations are not algorithmic oracle calls.
    std::vector<std::size_t> marked_set;
    for (std::size_t i = 0; i < problem.n; ++i)
        if (problem.predicate(i)) marked_set.push_back(i);
    std::size_t mcount = marked_set.size();

    SearchResult result;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto attempt = [&](std::size_t iters) -> bool {
        result.oracle_calls += iters;
        std::size_t idx;
        if (mcount == 0) {
            idx = uniform_u64(rng, big_n);
        } else {
            TwoValueState s = iterate(big_n, mcount, iters);
            double p_marked = double(mcount) * s.marked * s.marked;
            if (unif(rng) < p_marked)
                idx = marked_set[uniform_u64(rng, mcount)];
            else {
                idx = uniform_u64(rng, big_n - mcount);
                // remap into the unmarked positions
                for (std::size_t mpos : marked_set) {
                    if (idx >= mpos) ++idx;
                    else break;
                }
            }
        }
        result.oracle_calls += 1; // classical verification of the candidate
        if (pred(idx)) {
            result.index = idx;
            return true;
        }
        return false;
    };

    std::size_t log2n = 0;
    while ((std::size_t(1) << log2n) < big_n) ++log2n;
    std::size_t budget = (log2n + 2) * (log2n + 2);

    if (problem.marked_count_hint && *problem.marked_count_hint > 0) {
        std::size_t hint = std::min(*problem.marked_count_hint, big_n);
        std::size_t iters = optimal_iterations(big_n, hint);
        for (std::size_t a = 0; a < budget; ++a)
            if (attempt(iters)) return result;
        return result;
    }

    // Unknown marked count: random iteration counts with growing range.
    double limit = 1.0;
    double max_limit = std::sqrt(double(big_n)) + 1.0;
    for (std::size_t a = 0; a < budget; ++a) {
        std::size_t iters = uniform_u64(rng, std::size_t(limit));
        if (attempt(iters)) return result;
        limit = std::min(limit * 1.2 + 1.0, max_limit);
    }
    return result;
}

} // namespace qcw::grover
