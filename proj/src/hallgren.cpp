#include "qcw/hallgren.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qcw/errors.hpp"
#include "qcw/qsim.hpp"

namespace qcw::hallgren {

namespace {
constexpr double kPi = std::numbers::pi;

long double mod_reg(long double x, long double r) {
    long double v = fmodl(x, r);
    if (v < 0) v += r;
    return v;
}
} // namespace

unsigned bit_length(const Int& v) {
    Int a = abs(v);
    return unsigned(mpz_sizeinbase(a.get_mpz_t(), 2));
}

GHatSpec make_ghat_spec(const Int& delta, const Int& precision_n, bool strict) {
    QuadOrder order = quad::make_order(delta);
    if (delta <= 0) throw DomainError("make_ghat_spec: needs a real order");
    Int n = bit_length(delta);
    if (strict) {
        // N >= n * 32 disc / 3
        if (3 * precision_n < 32 * n * delta)
            throw DomainError("make_ghat_spec: N below the strict bound");
    }
    if (precision_n < 1) throw DomainError("make_ghat_spec: N < 1");
    GHatSpec spec{order, quad::build_cycle(order), precision_n, strict};
    return spec;
}

std::pair<QuadIdeal, Int> g_hat(const Int& j, const GHatSpec& spec) {
    if (j < 0) throw DomainError("g_hat: j < 0");
    long double n_ld = (long double)spec.precision_n.get_d();
    long double x = (long double)j.get_d() / n_ld;
    InfraPoint w = quad::ideal_left(x, spec.cycle);
    long double err = quad::ideal_error(x, spec.cycle);
    long double scaled = n_ld * err;
    Int floor_val(std::floor((double)scaled));
    return {w.ideal, floor_val};
}

std::optional<std::uint64_t> regulator_core_sample(const GHatSpec& spec,
                                                   std::uint64_t m, Rng& rng) {
    if (m < 2) throw DomainError("regulator_core_sample: m < 2");
    long double n_ld = (long double)spec.precision_n.get_d();
    long double s = n_ld * spec.cycle.regulator; // N R, the hidden real period
    // Measure the second register: uniform x0 selects the coset; the exact
    // preimage of ghat(x0) inside [0, m) is the post-measurement support.
    std::uint64_t x0 = uniform_u64(rng, m);
    auto z = g_hat(Int((unsigned long)x0), spec);
    std::vector<qsim::SupportPoint> support;
    long double base = (long double)x0 - floorl((long double)x0 / s) * s;
    // scan the two integer candidates around base + j s (ghat is one-to-one
    // within a period, so no other x can collide)
    for (long double pos = base; pos < (long double)m + 1.0L; pos += s) {
        long long lo = (long long)floorl(pos) - 1;
        for (long long cand = lo; cand <= lo + 3; ++cand) {
            if (cand < 0 || (std::uint64_t)cand >= m) continue;
            if (!support.empty() && support.back().index == (std::uint64_t)cand) continue;
            auto v = g_hat(Int((long)cand), spec);
            if (v.first == z.first && v.second == z.second)
                support.push_back({(std::uint64_t)cand, {1.0, 0.0}});
        }
    }
    if (support.empty()) return std::nullopt;
    double amp = 1.0 / std::sqrt(double(support.size()));
    for (auto& pt : support) pt.amplitude = {amp, 0.0};
    std::uint64_t y = qsim::fourier_sample_draw(support, m, rng);
    // rejection step: keep only y <= m / n
    Int n = bit_length(spec.order.disc);
    if (Int((unsigned long)y) * n > Int((unsigned long)m)) return std::nullopt;
    return y;
}

namespace {

// "Close to a multiple of s" test of a candidate integer A: the point A/N
// must land within 2/N of the start of the principal cycle.
bool close_to_multiple(const Int& a, const GHatSpec& spec) {
    if (a <= 0) return false;
    long double n_ld = (long double)spec.precision_n.get_d();
    long double x = (long double)a.get_d() / n_ld;
    InfraPoint w = quad::ideal_left(x, spec.cycle);
    if (!(w.ideal == spec.cycle.ideals[0])) return false;
    return n_ld * quad::ideal_error(x, spec.cycle) < 2.0L;
}

// A spurious convergent can hand back j*s for j >= 2, which also passes the
// multiple test; the fundamental candidate is the one none of whose integer
// fractions passes it.
bool fundamental_candidate(const Int& a, const GHatSpec& spec) {
    if (!close_to_multiple(a, spec)) return false;
    for (long j = 2; j <= 32; ++j) {
        numt::Fraction div(a, Int(j));
        Int part = numt::round_to_int(div);
        if (part >= 2 && close_to_multiple(part, spec)) return false;
    }
    return true;
}

} // namespace

std::optional<RegulatorRun> regulator_quantum(const Int& delta, Rng& rng,
                                              const DeskOverrides& overrides) {
    Int precision = overrides.precision_n;
    if (precision == 0) {
        Int n = bit_length(delta);
        precision = (32 * n * delta + 2) / 3; // strict bound
    }
    GHatSpec spec = make_ghat_spec(delta, precision, overrides.strict);
    long double s = (long double)precision.get_d() * spec.cycle.regulator;
    std::uint64_t m = overrides.first_m;
    if (m == 0) {
        m = 2;
        while ((long double)m <= 2.0L * s * s) m <<= 1;
    }
    int resamples = 0;
    for (int round = 0; round < overrides.max_rounds; ++round, m <<= 1) {
        // collect two accepted nonzero samples
        std::uint64_t y[2] = {0, 0};
        int have = 0;
        int budget = overrides.max_resamples;
        while (have < 2 && budget > 0) {
            auto got = regulator_core_sample(spec, m, rng);
            if (!got || *got == 0) {
                --budget;
                ++resamples;
                continue;
            }
            y[have++] = *got;
        }
        if (have < 2) continue;
        // continued fractions on y1/y2; candidates k1 = numerators
        numt::Fraction ratio(Int((unsigned long)y[0]), Int((unsigned long)y[1]));
        ratio.canonicalize();
        for (const numt::Fraction& conv : numt::convergents(ratio)) {
            Int k1 = conv.get_num();
            if (k1 <= 0) continue;
            // A = round(k1 m / y1); the one-sided window [s, s+2) means the
            // passing integer is A or A+1
            numt::Fraction est(k1 * Int((unsigned long)m), Int((unsigned long)y[0]));
            Int a = numt::round_to_int(est);
            for (Int cand = a; cand <= a + 1; ++cand) {
                if (fundamental_candidate(cand, spec)) {
                    long double estimate = (long double)cand.get_d() /
                                           (long double)precision.get_d();
                    return RegulatorRun{estimate, m, resamples, y[0], y[1]};
                }
            }
        }
    }
    return std::nullopt;
}

double interference_ratio(std::uint64_t q, double alpha, const std::vector<double>& beta) {
    if (beta.size() != q) throw DomainError("interference_ratio: beta size mismatch");
    std::complex<double> acc(0.0, 0.0);
    for (std::uint64_t j = 0; j < q; ++j)
        acc += std::polar(1.0, 2.0 * kPi * (double(j) / double(q) * alpha + beta[j]));
    return std::norm(acc) / (double(q) * double(q));
}

bool interference_check(std::uint64_t q, double alpha, const std::vector<double>& beta) {
    return interference_ratio(q, alpha, beta) >= kInterferenceFloor;
}

PidpParams pidp_params(const Int& delta, long double reg_estimate, bool strict_b) {
    Int n = bit_length(delta);
    PidpParams out;
    out.reg_estimate = reg_estimate;
    out.m = (std::uint64_t)floorl(2.0L * reg_estimate) + 1;
    if (out.m < 4) out.m = 4;
    Int b = strict_b ? (32 * n * delta + 2) / 3 + 1 : Int(16);
    out.strict_b = strict_b;
    for (int attempt = 0; attempt < 64; ++attempt, b *= 2) {
        // exact dyadic value of b * reg_estimate
        numt::Fraction target((double)(reg_estimate * (long double)b.get_d()));
        bool found = false;
        for (const numt::Fraction& conv : numt::convergents(target)) {
            Int p = conv.get_num(), q = conv.get_den();
            // |b R~ - p/q| <= 1/(4 q m)
            numt::Fraction err = target - conv;
            if (err < 0) err = -err;
            if (err * q * Int((unsigned long)(4 * out.m)) <= 1) {
                out.b = b;
                out.q_den = q;
                out.big_n = q * b;
                out.p = numt::round_to_int(numt::Fraction((double)reg_estimate) *
                                           numt::Fraction(out.big_n));
                found = true;
                break;
            }
            if (q > 100000) break; // keep N at desk scale; try a larger b
        }
        if (found) return out;
    }
    throw AlgorithmFailure("pidp_params: convergent search exhausted");
}

std::pair<QuadIdeal, Int> h_hat(const Int& j1, const Int& j2,
                                const QuadIdeal& target, const PidpParams& params,
                                const GHatSpec& spec) {
    const QuadOrder& order = spec.order;
    // Binary powering of the target with a relative-offset ledger:
    // delta(pt) = j * a + kappa with kappa known, a never read.
    struct Tracked {
        QuadIdeal ideal;
        long double kappa;
    };
    Tracked acc{quad::unit_ideal(order), 0.0L};   // j = 0
    Tracked base{target, 0.0L};                   // j = 1
    Int e = j1;
    bool acc_used = false;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            if (!acc_used) {
                acc = base;
                acc_used = true;
            } else {
                QuadIdeal raw = quad::compose_raw(acc.ideal, base.ideal, order);
                auto [red, inc] = quad::reduce_real(raw, order);
                acc = {red, acc.kappa + base.kappa + inc};
            }
        }
        e >>= 1;
        if (e > 0) {
            QuadIdeal raw = quad::compose_raw(base.ideal, base.ideal, order);
            auto [red, inc] = quad::reduce_real(raw, order);
            base = {red, 2 * base.kappa + inc};
        }
    }
    // Now delta(acc) = j1 a + kappa. Walk rho to the ideal to the left of
    // j1 a + j2/N, i.e. adjust the offset to land in [0, next gap).
    long double offset = (long double)j2.get_d() /
                         (long double)params.big_n.get_d();
    InfraPoint cur{acc.ideal, acc.kappa}; // dist field carries kappa
    int guard = 0;
    while (cur.dist > offset) {
        cur = quad::rho_inverse(cur, order);
        if (++guard > 2000000) throw AlgorithmFailure("h_hat: backward walk diverged");
    }
    while (true) {
        InfraPoint nxt = quad::rho(cur, order);
        if (nxt.dist > offset) break;
        cur = nxt;
        if (++guard > 2000000) throw AlgorithmFailure("h_hat: forward walk diverged");
    }
    long double err = offset - cur.dist; // = (j1 a + j2/N) - delta(W(...)))
    long double scaled = (long double)params.big_n.get_d() * err;
    return {cur.ideal, Int(std::floor((double)scaled))};
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> pidp_core_sample(
    const QuadIdeal& target, const PidpParams& params, const GHatSpec& spec,
    Rng& rng) {
    const RealCycle& cycle = spec.cycle;
    long double r = cycle.regulator;
    long double a = cycle.distance_of(target); // simulator-internal
    std::uint64_t p = (std::uint64_t)params.p.get_ui();
    std::uint64_t mp = params.m * p;
    if (mp > 1000000) throw DomainError("pidp_core_sample: support budget exceeded");
    long double n_ld = (long double)params.big_n.get_d();
    // support {(x, t_x)}: t_x = ceil(N ((-a x) mod R)), one t per s.
    std::vector<std::uint64_t> tx(mp);
    for (std::uint64_t x = 0; x < mp; ++x) {
        long double w = mod_reg(-a * (long double)x, r);
        long double t = ceill(n_ld * w);
        std::uint64_t ti = (std::uint64_t)t;
        tx[x] = ti % p;
    }
    // Rejection-sample (s, t) from the exact 2D Fourier distribution.
    double bound = 1.0 / double(p); // P <= (mp)^2 / (m^2 p^3)
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Int n = bit_length(spec.order.disc);
    for (int tries = 0; tries < 2000000; ++tries) {
        std::uint64_t s = uniform_u64(rng, mp);
        std::uint64_t t = uniform_u64(rng, p);
        std::complex<double> acc(0.0, 0.0);
        for (std::uint64_t x = 0; x < mp; ++x) {
            double phase = double((__uint128_t(x) * s) % mp) / double(mp) +
                           double((__uint128_t(tx[x]) * t) % p) / double(p);
            acc += std::polar(1.0, 2.0 * kPi * phase);
        }
        double prob = std::norm(acc) / (double(params.m) * double(params.m) *
                                        double(p) * double(p) * double(p));
        if (unif(rng) * bound > prob) continue;
        // rejection step of the algorithm itself: t <= p / n
        if (Int((unsigned long)t) * n > params.p) return std::nullopt;
        return std::make_pair(s, t);
    }
    throw AlgorithmFailure("pidp_core_sample: rejection sampling stalled");
}

PidpResult pidp_solve(const QuadIdeal& target, const Int& delta, Rng& rng,
                      const DeskOverrides& overrides) {
    GHatSpec spec = make_ghat_spec(delta, std::max(Int(overrides.precision_n), Int(8)),
                                   overrides.strict);
    const RealCycle& cycle = spec.cycle;
    long double r = cycle.regulator;
    PidpParams params = pidp_params(delta, cycle.regulator, /*strict_b=*/false);
    long double n_ld = (long double)params.big_n.get_d();

    std::vector<std::pair<std::uint64_t, std::uint64_t>> accepted;
    int samples = 0;
    for (int budget = 0; budget < overrides.max_resamples * 4; ++budget) {
        auto got = pidp_core_sample(target, params, spec, rng);
        if (!got) continue;
        ++samples;
        accepted.push_back(*got);
        // try all coprime pairs among accepted samples
        for (std::size_t i = 0; i + 1 < accepted.size(); ++i) {
            auto [s1, t1] = accepted[i];
            auto [s2, t2] = accepted.back();
            Int g = numt::gcd(Int((unsigned long)t1), Int((unsigned long)t2));
            if (g != 1) continue;
            auto eg = numt::egcd(Int((unsigned long)t1), Int((unsigned long)t2));
            // a~ = (x s1 + y s2) / (m N) mod R
            Int num = eg.x * Int((unsigned long)s1) + eg.y * Int((unsigned long)s2);
            long double atilde =
                mod_reg((long double)num.get_d() /
                            ((long double)params.m * n_ld),
                        r);
            // refinement: scan [a~ - 1 - h, a~ + 1 + h] at resolution h for
            // the left edge of a W == target interval
            long double h = std::min((long double)1.0L / n_ld,
                                     3.0L / (64.0L * (long double)delta.get_d()));
            long double lo = atilde - 1.0L - 2.0L * h;
            long double hi = atilde + 1.0L + 2.0L * h;
            bool prev_inside = false;
            long double prev_err = 0.0L;
            bool have_prev = false;
            for (long double x = lo; x <= hi; x += h) {
                long double xm = mod_reg(x, r);
                bool inside = quad::ideal_left(xm, cycle).ideal == target;
                long double err = quad::ideal_error(xm, cycle);
                // The left edge of the W == target interval is where either
                // the ideal flips to the target or the error resets (the
                // latter catches cycles where W is constant).
                bool edge = inside && have_prev &&
                            (!prev_inside || err < prev_err - h / 2.0L);
                if (edge) {
                    // hard postcondition: W(result) = target
                    if (quad::ideal_left(xm, cycle).ideal == target)
                        return {xm, samples};
                }
                prev_inside = inside;
                prev_err = err;
                have_prev = true;
            }
        }
        if (accepted.size() > 64) break;
    }
    throw AlgorithmFailure("pidp_solve: sampling budget exhausted");
}

} // namespace qcw::hallgren
