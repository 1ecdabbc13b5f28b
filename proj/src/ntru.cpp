#include "qcw/ntru.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcw/errors.hpp"

namespace qcw::ntru {

NtruParams toy7() { return {7, 3, 64, 2, 2, 2}; }
NtruParams toy11() { return {11, 3, 128, 3, 3, 3}; }

RingPoly ring_mul(const RingPoly& a, const RingPoly& b) {
    if (a.n() != b.n()) throw DomainError("ring_mul: degree mismatch");
    std::size_t n = a.n();
    RingPoly out{std::vector<long long>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            out.c[(i + j) % n] += a.c[i] * b.c[j];
    }
    return out;
}

RingPoly ring_add(const RingPoly& a, const RingPoly& b) {
    if (a.n() != b.n()) throw DomainError("ring_add: degree mismatch");
    RingPoly out = a;
    for (std::size_t i = 0; i < a.n(); ++i) out.c[i] += b.c[i];
    return out;
}

RingPoly scalar_mul(long long s, const RingPoly& a) {
    RingPoly out = a;
    for (auto& x : out.c) x *= s;
    return out;
}

long long center_mod(long long v, long long q) {
    long long r = v % q;
    if (r < 0) r += q;
    if (2 * r >= q) r -= q; // [-q/2, q/2) for even q
    return r;
}

RingPoly center_mod(const RingPoly& a, long long q) {
    RingPoly out = a;
    for (auto& x : out.c) x = center_mod(x, q);
    return out;
}

RingPoly sample_L(std::size_t N, std::size_t d1, std::size_t d2, Rng& rng) {
    if (d1 + d2 > N) throw DomainError("sample_L: d1 + d2 > N");
    RingPoly out{std::vector<long long>(N, 0)};
    std::vector<std::size_t> pos(N);
    for (std::size_t i = 0; i < N; ++i) pos[i] = i;
    for (std::size_t i = 0; i < d1 + d2; ++i) {
        std::size_t j = i + uniform_u64(rng, N - i);
        std::swap(pos[i], pos[j]);
        out.c[pos[i]] = i < d1 ? 1 : -1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inversion in (Z/m)[x]/(x^N - 1)

namespace {

long long mod_pos(long long v, long long m) {
    long long r = v % m;
    return r < 0 ? r + m : r;
}

using Poly = std::vector<long long>; // index = degree

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long long inv_mod_prime(long long a, long long p) {
    auto eg = numt::egcd(numt::Int(long(mod_pos(a, p))), numt::Int(long(p)));
    if (eg.g != 1) throw DomainError("inv_mod_prime: not invertible");
    numt::Int r = eg.x % long(p);
    if (r < 0) r += long(p);
    return r.get_si();
}

// Inverse of a modulo (x^N - 1) over F_p by extended Euclid.
std::optional<Poly> invert_mod_prime(const Poly& a_in, std::size_t N, long long p) {
    Poly modulus(N + 1, 0);
    modulus[0] = mod_pos(-1, p);
    modulus[N] = 1;
    Poly r0 = modulus, r1 = a_in;
    for (auto& x : r1) x = mod_pos(x, p);
    trim(r1);
    Poly t0 = {}, t1 = {1};
    while (!r1.empty()) {
        Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
        Poly rem = r0;
        long long lead_inv = inv_mod_prime(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            long long c = mod_pos(rem.back() * lead_inv, p);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = mod_pos(rem[shift + i] - c * r1[i], p);
            trim(rem);
        }
        Poly qt1(q.size() + t1.size(), 0);
        if (!q.empty() && !t1.empty())
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < t1.size(); ++j)
                    qt1[i + j] = mod_pos(qt1[i + j] + q[i] * t1[j], p);
        trim(qt1);
        Poly t2 = t0;
        if (t2.size() < qt1.size()) t2.resize(qt1.size(), 0);
        for (std::size_t i = 0; i < qt1.size(); ++i)
            t2[i] = mod_pos(t2[i] - qt1[i], p);
        trim(t2);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    if (r0.size() != 1) return std::nullopt; // gcd not constant
    long long s = inv_mod_prime(r0[0], p);
    Poly out = t0;
    for (auto& x : out) x = mod_pos(x * s, p);
    out.resize(N, 0);
    return out;
}

} // namespace

std::optional<RingPoly> invert_mod(const RingPoly& a, long long modulus) {
    std::size_t N = a.n();
    bool pow2 = modulus >= 2 && (modulus & (modulus - 1)) == 0;
    if (pow2) {
        auto base = invert_mod_prime(a.c, N, 2);
        if (!base) return std::nullopt;
        RingPoly b{*base}; // Hensel: b <- b (2 - a b), modulus exponent doubles
        long long m = 2;
        while (m < modulus) {
            m = std::min(m * m, modulus);
            RingPoly ab = ring_mul(a, b);
            RingPoly two_minus{std::vector<long long>(N, 0)};
            two_minus.c[0] = 2;
            for (std::size_t i = 0; i < N; ++i) two_minus.c[i] -= ab.c[i];
            b = ring_mul(b, two_minus);
            for (auto& x : b.c) x = mod_pos(x, m);
        }
        for (auto& x : b.c) x = mod_pos(x, modulus);
        return b;
    }
    if (!numt::is_prime(numt::Int(long(modulus))))
        throw DomainError("invert_mod: modulus must be prime or a power of two");
    auto inv = invert_mod_prime(a.c, N, modulus);
    if (!inv) return std::nullopt;
    return RingPoly{*inv};
}

// ---------------------------------------------------------------------------
// Keygen / encrypt / decrypt

NtruKeyPair ntru_keygen(const NtruParams& params, Rng& rng) {
    if (numt::gcd(numt::Int(long(params.p)), numt::Int(long(params.q))) != 1)
        throw DomainError("ntru_keygen: p and q must be coprime");
    for (int tries = 0; tries < 10000; ++tries) {
        RingPoly f = sample_L(params.N, params.d_f, params.d_f - 1, rng);
        auto fp = invert_mod(f, params.p);
        auto fq = invert_mod(f, params.q);
        if (!fp || !fq) continue; // begin the procedure again
        RingPoly g = sample_L(params.N, params.d_g, params.d_g, rng);
        RingPoly h = ring_mul(*fq, g);
        for (auto& x : h.c) x = mod_pos(x, params.q);
        return {params, h, f, *fp, g};
    }
    throw DomainError("ntru_keygen: no invertible f found");
}

RingPoly ntru_encrypt(const NtruParams& params, const RingPoly& h,
                      const RingPoly& m, Rng& rng,
                      const std::optional<RingPoly>& fixed_r) {
    for (long long x : m.c)
        if (2 * std::llabs(x) > params.p - 1)
            throw DomainError("ntru_encrypt: message coefficients out of range");
    RingPoly r = fixed_r ? *fixed_r : sample_L(params.N, params.d_r, params.d_r, rng);
    RingPoly c = ring_add(scalar_mul(params.p, ring_mul(r, h)), m);
    for (auto& x : c.c) x = mod_pos(x, params.q);
    return c;
}

RingPoly ntru_decrypt(const NtruParams& params, const RingPoly& f,
                      const RingPoly& f_p_inv, const RingPoly& c) {
    RingPoly a = center_mod(ring_mul(f, c), params.q);
    return center_mod(ring_mul(f_p_inv, a), params.p);
}

Failure classify_failure(const RingPoly& f, const RingPoly& g, const RingPoly& r,
                         const RingPoly& m, const NtruParams& params) {
    RingPoly b = ring_add(scalar_mul(params.p, ring_mul(r, g)), ring_mul(f, m));
    long long mx = b.c[0], mn = b.c[0];
    for (long long x : b.c) {
        mx = std::max(mx, x);
        mn = std::min(mn, x);
    }
    if (mx - mn > params.q) return Failure::gap;
    // decryption reads A from [-q/2, q/2); anything outside wraps
    if (2 * mx >= params.q || 2 * mn < -params.q) return Failure::wrap;
    return Failure::none;
}

FailureRates failure_rates(const NtruParams& params, std::size_t trials, Rng& rng) {
    // The two failure conditions overlap: a spread beyond q forces a
    // coefficient outside any centered interval, so every gap failure also
    // meets the wrapping condition. Rates are reported inclusively, matching
    // the definitions; classify_failure stays a partition with gap first.
    std::size_t wraps = 0, gaps = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        NtruKeyPair key = ntru_keygen(params, rng);
        RingPoly m{std::vector<long long>(params.N, 0)};
        long long half = (params.p - 1) / 2;
        for (auto& x : m.c) x = (long long)(uniform_u64(rng, 2 * half + 1)) - half;
        RingPoly r = sample_L(params.N, params.d_r, params.d_r, rng);
        Failure f = classify_failure(key.f, key.g, r, m, params);
        if (f != Failure::none) ++wraps;
        if (f == Failure::gap) ++gaps;
    }
    auto ci = [&](double p) { return 1.96 * std::sqrt(p * (1 - p) / double(trials)); };
    double wr = double(wraps) / double(trials);
    double gr = double(gaps) / double(trials);
    return {wr, gr, ci(wr), ci(gr)};
}

// ---------------------------------------------------------------------------
// Lattice attack

lattice::IntBasis build_attack_basis(const RingPoly& h, long long q,
                                     const Int& alpha_num, const Int& alpha_den) {
    if (alpha_num <= 0 || alpha_den <= 0)
        throw DomainError("build_attack_basis: alpha must be positive");
    std::size_t n = h.n();
    lattice::IntBasis b;
    for (std::size_t i = 0; i < n; ++i) {
        lattice::IntVec row(2 * n, 0);
        row[i] = alpha_num;
        for (std::size_t j = 0; j < n; ++j)
            row[n + j] = alpha_den * Int(long(h.c[(j + n - i) % n]));
        b.rows.push_back(row);
    }
    for (std::size_t i = 0; i < n; ++i) {
        lattice::IntVec row(2 * n, 0);
        row[n + i] = alpha_den * Int(long(q));
        b.rows.push_back(row);
    }
    return b;
}

Fraction optimal_alpha(const Int& norm_f_sq, const Int& norm_g_sq) {
    if (norm_f_sq <= 0 || norm_g_sq <= 0)
        throw DomainError("optimal_alpha: norms must be positive");
    // alpha = sqrt(norm_g_sq / norm_f_sq) = sqrt(norm_g_sq norm_f_sq) / norm_f_sq
    Int prod = norm_f_sq * norm_g_sq;
    Int root = numt::kth_root_floor(prod, 2);
    if (root * root == prod) {
        Fraction exact(root, norm_f_sq);
        exact.canonicalize();
        return exact;
    }
    double target = std::sqrt(norm_g_sq.get_d() / norm_f_sq.get_d());
    Fraction approx(target); // exact dyadic value of the double
    Fraction best(0);
    for (const Fraction& c : numt::convergents(approx)) {
        best = c;
        if (c.get_den() > 1000000) break;
    }
    return best;
}

double randomness_constant(const NtruParams& params, double norm_f, double norm_g) {
    return std::sqrt(double(params.N) * double(params.q) /
                     (2.0 * M_PI * M_E * norm_f * norm_g));
}

namespace {

// Rotations of +-F preserve the coefficient multiset of L(d1, d2).
bool rotation_class_member(const RingPoly& cand, std::size_t d1, std::size_t d2) {
    std::size_t ones = 0, neg = 0;
    for (long long x : cand.c) {
        if (x == 1) ++ones;
        else if (x == -1) ++neg;
        else if (x != 0) return false;
    }
    return (ones == d1 && neg == d2) || (ones == d2 && neg == d1);
}

} // namespace

std::optional<RecoveredKey> ntru_lattice_attack(const NtruParams& params,
                                                const RingPoly& h, Rng& rng) {
    if (params.N > 12) throw DomainError("ntru_lattice_attack: N above desk scale");
    // |F|^2 = 2 d_f - 1 and |G|^2 = 2 d_g are public parameter knowledge.
    Fraction alpha = optimal_alpha(Int(2 * params.d_f - 1), Int(2 * params.d_g));
    lattice::IntBasis basis =
        build_attack_basis(h, params.q, alpha.get_num(), alpha.get_den());
    lattice::IntBasis reduced = lattice::lll_reduce(basis);
    std::size_t n = params.N;
    Int an = alpha.get_num();
    for (const auto& row : reduced.rows) {
        for (int sign = 0; sign < 2; ++sign) {
            RingPoly cand{std::vector<long long>(n, 0)};
            bool plausible = true;
            for (std::size_t i = 0; i < n && plausible; ++i) {
                Int v = sign ? Int(-row[i]) : row[i];
                if (v % an != 0) { plausible = false; break; }
                Int f = v / an;
                if (f < -1 || f > 1) { plausible = false; break; }
                cand.c[i] = f.get_si();
            }
            if (!plausible) continue;
            if (!rotation_class_member(cand, params.d_f, params.d_f - 1)) continue;
            auto fp = invert_mod(cand, params.p);
            if (!fp) continue;
            if (!invert_mod(cand, params.q)) continue;
            bool ok = true; // accept only if 50 probe messages roundtrip
            long long half = (params.p - 1) / 2;
            for (int probe = 0; probe < 50 && ok; ++probe) {
                RingPoly m{std::vector<long long>(n, 0)};
                for (auto& x : m.c)
                    x = (long long)(uniform_u64(rng, 2 * half + 1)) - half;
                RingPoly c = ntru_encrypt(params, h, m, rng);
                if (ntru_decrypt(params, cand, *fp, c) != m) ok = false;
            }
            if (ok) return RecoveredKey{cand, *fp};
        }
    }
    return std::nullopt;
}

std::string poly_to_json(const RingPoly& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.n(); ++i) os << (i ? "," : "") << p.c[i];
    os << "]";
    return os.str();
}

} // namespace qcw::ntru
