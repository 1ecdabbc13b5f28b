#include "qcw/hsp.hpp"

#include <map>

#include "qcw/errors.hpp"
#include "qcw/qsim.hpp"

namespace qcw::hsp {

namespace {

// Smallest t > 0 with f(t) = f(0); this is the hidden r. nullopt when the
// period does not show up within the scan limit.
std::optional<std::uint64_t> oracle_period(const PeriodicOracle& oracle,
                                           std::uint64_t limit) {
    if (oracle.period_hint) return *oracle.period_hint;
    Int f0 = oracle.f(0);
    for (std::uint64_t t = 1; t <= limit; ++t)
        if (oracle.f(t) == f0) return t;
    return std::nullopt;
}

std::uint64_t next_pow2_above(std::uint64_t v) {
    std::uint64_t m = 2;
    while (m <= v) m <<= 1;
    return m;
}

std::uint64_t isqrt_u64(std::uint64_t v) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(double(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

} // namespace

int deutsch(const std::function<int(int)>& f) {
    using namespace qsim;
    Statevector s = basis_state({2, 2}, {0, 1});
    s = apply_single(s, gate_h(), 0); // (|0>+|1>)/sqrt2
    s = apply_single(s, gate_h(), 1); // (|0>-|1>)/sqrt2
    s = apply_oracle(s, [&](std::size_t x) { return std::size_t(f(int(x)) & 1); }, 0, 1);
    s = apply_single(s, gate_h(), 0);
    // The first qubit now holds |f(0) xor f(1)> exactly.
    double p1 = std::norm(s.amp[s.stride(0) * 1]) + std::norm(s.amp[s.stride(0) + 1]);
    return p1 > 0.5 ? 1 : 0;
}

std::uint64_t ihsp_sample(const PeriodicOracle& oracle, std::uint64_t m, Rng& rng) {
    if (m < 2) throw DomainError("ihsp_sample: m < 2");
    auto period = oracle_period(oracle, m);
    if (!period) {
        // f is injective on [0, m): the second-register measurement collapses
        // the first register to one point, whose transform is uniform.
        return uniform_u64(rng, m);
    }
    std::uint64_t r = *period;
    // Measuring the second register leaves a uniform superposition over the
    // coset {k, k+r, ...} of a random offset k, weighted by coset size.
    std::uint64_t k = uniform_u64(rng, m) % r;
    std::uint64_t count = (m - 1 - k) / r + 1;
    return qsim::fourier_sample_draw_ap(k, r, count, m, rng);
}

std::optional<std::uint64_t> find_period_bounded(const PeriodicOracle& oracle,
                                                 std::uint64_t r_bound, Rng& rng) {
    std::uint64_t m = next_pow2_above(2 * r_bound * r_bound);
    std::uint64_t y1 = ihsp_sample(oracle, m, rng);
    std::uint64_t y2 = ihsp_sample(oracle, m, rng);
    Int bound = isqrt_u64(m / 2);
    auto c1 = numt::recover_fraction(y1, m, bound);
    auto c2 = numt::recover_fraction(y2, m, bound);
    if (!c1 || !c2) return std::nullopt;
    Int t = numt::lcm(c1->get_den(), c2->get_den());
    if (t > bound) return std::nullopt;
    std::uint64_t tu = t.get_ui();
    if (oracle.f(0) != oracle.f(tu)) return std::nullopt;
    return tu;
}

std::uint64_t find_period(const PeriodicOracle& oracle, Rng& rng) {
    // Nature's bookkeeping: pin the hidden period once so every sparse
    // sample reuses it; the measured statistics are unchanged.
    PeriodicOracle hinted = oracle;
    if (!hinted.period_hint) {
        auto r = oracle_period(oracle, std::uint64_t(1) << 26);
        if (!r) throw DomainError("find_period: period beyond desk scale");
        hinted.period_hint = r;
    }
    const PeriodicOracle& o = hinted;
    for (std::uint64_t m = 8;; m <<= 1) {
        std::uint64_t r_bound = isqrt_u64(m / 2);
        if (r_bound == 0) continue;
        for (int rep = 0; rep < 3; ++rep) {
            auto t = find_period_bounded(o, r_bound, rng);
            if (!t) continue;
            // t is a multiple of r; the smallest divisor d with f(d) = f(0)
            // is r itself.
            Int f0 = o.f(0);
            for (std::uint64_t d = 1; d * d <= *t; ++d) {
                if (*t % d) continue;
                if (o.f(d) == f0) return d;
            }
            for (std::uint64_t d = isqrt_u64(*t); d >= 1; --d) {
                if (*t % d) continue;
                std::uint64_t cod = *t / d;
                if (o.f(cod) == f0) return cod;
            }
        }
    }
}

Int find_order(const Int& a, const Int& n, Rng& rng) {
    if (n < 2) throw DomainError("find_order: n < 2");
    Int am = a % n;
    if (am < 0) am += n;
    if (numt::gcd(am, n) != 1) throw DomainError("find_order: gcd(a, n) != 1");
    PeriodicOracle oracle{[am, n](std::uint64_t x) { return numt::mod_pow(am, Int(x), n); },
                          std::nullopt};
    return find_period(oracle, rng);
}

std::optional<Int> shor_factor(const Int& n, Rng& rng) {
    if (n < 4) throw DomainError("shor_factor: n too small");
    Int a = numt::uniform_int(rng, 1, n - 1);
    Int s = numt::gcd(a, n);
    if (s > 1) return s;
    if (n.fits_ulong_p() == 0) throw DomainError("shor_factor: n beyond desk scale");
    std::uint64_t r_bound = mpz_get_ui(n.get_mpz_t()); // r <= phi(n) < n, so m > 2n^2
    PeriodicOracle oracle{[a, n](std::uint64_t x) { return numt::mod_pow(a, Int(x), n); },
                          std::nullopt};
    std::optional<std::uint64_t> r;
    for (int i = 0; i < 3; ++i) {
        auto cand = find_period_bounded(oracle, r_bound, rng);
        if (cand && (!r || *cand < *r)) r = cand;
    }
    if (!r) return std::nullopt;
    if (*r % 2 != 0) return std::nullopt;
    Int t = numt::gcd(numt::mod_pow(a, Int(*r / 2), n) - 1, n);
    if (t <= 1 || t >= n) return std::nullopt;
    return t;
}

namespace {

void full_factor_rec(const Int& n, Rng& rng,
                     std::map<Int, unsigned>& acc, unsigned mult) {
    if (n == 1) return;
    if (numt::is_prime(n)) {
        acc[n] += mult;
        return;
    }
    if (auto pw = numt::perfect_power(n)) {
        full_factor_rec(pw->first, rng, acc, mult * unsigned(pw->second));
        return;
    }
    if (n % 2 == 0) {
        acc[2] += mult;
        full_factor_rec(n / 2, rng, acc, mult);
        return;
    }
    while (true) {
        auto t = shor_factor(n, rng);
        if (!t) continue;
        full_factor_rec(*t, rng, acc, mult);
        full_factor_rec(n / *t, rng, acc, mult);
        return;
    }
}

} // namespace

std::vector<std::pair<Int, unsigned>> full_factor(const Int& n, Rng& rng) {
    if (n < 2) throw DomainError("full_factor: n < 2");
    std::map<Int, unsigned> acc;
    full_factor_rec(n, rng, acc, 1);
    return {acc.begin(), acc.end()};
}

Int group_pow(const Group& g, const Int& base, const Int& exp) {
    if (exp < 0) return group_pow(g, g.inv(base), -exp);
    Int result = g.id;
    Int b = base;
    Int e = exp;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = g.op(result, b);
        b = g.op(b, b);
        e >>= 1;
    }
    return result;
}

Group zn_star(const Int& n) {
    Group g;
    g.id = 1;
    g.op = [n](const Int& x, const Int& y) { return Int((x * y) % n); };
    g.inv = [n](const Int& x) { return numt::mod_inverse(x, n); };
    return g;
}

Int dlog_bsgs_group(const Group& group, const Int& a, const Int& b, const Int& order) {
    Int m = numt::kth_root_floor(order, 2);
    if (m * m < order) ++m;
    std::map<Int, Int> baby;
    Int cur = group.id;
    for (Int j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = group.op(cur, a);
    }
    Int giant = group.inv(group_pow(group, a, m));
    Int gamma = b;
    for (Int i = 0; i <= m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) return i * m + it->second;
        gamma = group.op(gamma, giant);
    }
    throw NotInSubgroup("dlog_bsgs_group: b not in <a>");
}

std::pair<Int, Int> phsp_sample(const DlogOracle& oracle, Rng& rng) {
    // The post-U_f state is an equal-weight combination over T of orthogonal
    // second-register states; measuring after the inverse QFTs is uniform
    // over T = {(s, s*k mod p)}. The simulator recovers k as nature would.
    if (!oracle.hidden_k)
        oracle.hidden_k = dlog_bsgs_group(oracle.group, oracle.a, oracle.b, oracle.order);
    Int s = numt::uniform_int(rng, 0, oracle.order - 1);
    Int t = (s * *oracle.hidden_k) % oracle.order;
    return {s, t};
}

Int dlog_prime_order(const DlogOracle& oracle, Rng& rng) {
    for (int attempt = 0; attempt < 4096; ++attempt) {
        auto [s, t] = phsp_sample(oracle, rng);
        if (s == 0) continue;
        Int k = (t * numt::mod_inverse(s, oracle.order)) % oracle.order;
        if (group_pow(oracle.group, oracle.a, k) == oracle.b) return k;
    }
    throw NotInSubgroup("dlog_prime_order: no consistent exponent found");
}

Int dlog(const Group& group, const Int& a, const Int& b, const Int& n_order,
         Rng& rng, bool classical_factor) {
    std::vector<std::pair<Int, unsigned>> factors =
        classical_factor ? numt::trial_division_factor(n_order)
                         : full_factor(n_order, rng);
    std::vector<Int> residues, moduli;
    for (const auto& [p, e] : factors) {
        Int alpha = group_pow(group, a, n_order / p);
        Int pe = 1;
        Int x_partial = 0; // k mod p^j so far
        Int pj = 1;        // p^j
        for (unsigned j = 0; j < e; ++j) {
            Int gamma = group_pow(group, a, x_partial);
            Int beta = group_pow(group, group.op(b, group.inv(gamma)),
                                 n_order / (pj * p));
            DlogOracle inner{group, alpha, beta, p, std::nullopt};
            Int lj = dlog_prime_order(inner, rng);
            x_partial += lj * pj;
            pj *= p;
        }
        pe = pj;
        residues.push_back(x_partial);
        moduli.push_back(pe);
    }
    Int k = numt::crt(residues, moduli);
    if (group_pow(group, a, k) != b) throw NotInSubgroup("dlog: b not in <a>");
    return k;
}

} // namespace qcw::hsp
