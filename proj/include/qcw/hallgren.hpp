#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcw/quad.hpp"
#include "qcw/rng.hpp"

namespace qcw::hallgren {

using numt::Int;
using quad::InfraPoint;
using quad::QuadIdeal;
using quad::QuadOrder;
using quad::RealCycle;

// Empirically calibrated floor for the interference ratio
// |sum_j e^{2 pi i (j alpha / q + beta_j)}|^2 / q^2 over the admissible
// region |alpha| <= 3/4, |beta| <= 1/n, n = log2 q, q in {64, 256, 1024}
// (minimum of a 1e4-draw seeded grid; regenerated by the test suite).
inline constexpr double kInterferenceFloor = 0.0115;

unsigned bit_length(const Int& v);

// The weakly periodic integer-domain function ghat(j) = (W(j/N), floor(N e(j/N))).
struct GHatSpec {
    QuadOrder order;
    RealCycle cycle;
    Int precision_n; // N
    bool strict;     // N >= n * 32 |disc| / 3 enforced when set
};

GHatSpec make_ghat_spec(const Int& delta, const Int& precision_n, bool strict);

std::pair<QuadIdeal, Int> g_hat(const Int& j, const GHatSpec& spec);

// One run of the regulator core: Fourier-sample the exact ghat preimage
// superposition over [0, m); nullopt is the algorithm's RESAMPLE branch
// (measured y > m/n).
std::optional<std::uint64_t> regulator_core_sample(const GHatSpec& spec,
                                                   std::uint64_t m, Rng& rng);

struct RegulatorRun {
    long double estimate;    // |estimate - R| < 1/N on success
    std::uint64_t m;         // the register size that succeeded
    int resamples;           // rejected measurements across the run
    std::uint64_t y1 = 0, y2 = 0; // the accepted core samples
};

struct DeskOverrides {
    Int precision_n = 64;      // N; 0 picks the strict bound
    std::uint64_t first_m = 0; // 0 = auto from N R
    int max_resamples = 64;
    int max_rounds = 4;        // m-doubling rounds (keeps supports desk-sized)
    bool strict = false;
};

// Full regulator pipeline: two accepted samples, continued fractions on
// y1/y2, close-to-a-multiple test, estimate a/N. nullopt when budgets are
// exhausted (the run is retried by the caller).
std::optional<RegulatorRun> regulator_quantum(const Int& delta, Rng& rng,
                                              const DeskOverrides& overrides = {});

double interference_ratio(std::uint64_t q, double alpha, const std::vector<double>& beta);
bool interference_check(std::uint64_t q, double alpha, const std::vector<double>& beta);

// Parameters for the PIDP core per the selection procedure: m > 2 R~, a
// convergent p/q of b R~ with |b R~ - p/q| <= 1/(4 q m), N = q b.
struct PidpParams {
    long double reg_estimate;
    std::uint64_t m = 0;
    Int b = 0;
    Int q_den = 0;
    Int big_n = 0; // N = q b
    Int p = 0;     // round(N R~)
    bool strict_b; // b above the n 32 disc / 3 bound
};

PidpParams pidp_params(const Int& delta, long double reg_estimate, bool strict_b);

// hhat(j1, j2) = ghat(a j1 + j2 / N), evaluated through compositions and rho
// corrections only; the distance a of the target is never read numerically.
std::pair<QuadIdeal, Int> h_hat(const Int& j1, const Int& j2,
                                const QuadIdeal& target, const PidpParams& params,
                                const GHatSpec& spec);

// One PIDP core run over the idealised coset structure (one t per s);
// nullopt is RESAMPLE (t > p/n).
std::optional<std::pair<std::uint64_t, std::uint64_t>> pidp_core_sample(
    const QuadIdeal& target, const PidpParams& params, const GHatSpec& spec,
    Rng& rng);

struct PidpResult {
    long double distance; // in [0, R), within 1/N of delta(target) mod R
    int samples;          // accepted core samples consumed
};

// Full PIDP solver: sample pairs with coprime t, extended-Euclid combine,
// then edge refinement at resolution min(1/N, 3/(64 disc)). The desk-scale
// parameter selection feeds the exact cycle regulator (the quantum
// regulator estimate is validated separately; chaining both at full
// precision exceeds desk budgets).
PidpResult pidp_solve(const QuadIdeal& target, const Int& delta, Rng& rng,
                      const DeskOverrides& overrides = {});

} // namespace qcw::hallgren
