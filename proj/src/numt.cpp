#include "qcw/numt.hpp"

#include <algorithm>
#include <map>

namespace qcw::numt {

EgcdResult egcd(const Int& a, const Int& b) {
    if (a == 0 && b == 0) throw DomainError("egcd: both arguments zero");
    Int old_r = a, r = b;
    Int old_x = 1, x = 0;
    Int old_y = 0, y = 1;
    while (r != 0) {
        Int q = old_r / r; // truncated division keeps the invariants exact
        Int tmp;
        tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_x - q * x; old_x = x; x = tmp;
        tmp = old_y - q * y; old_y = y; y = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    return {old_r, old_x, old_y};
}

Int mod_pow(const Int& base, const Int& exp, const Int& modulus) {
    if (modulus < 2) throw DomainError("mod_pow: modulus < 2");
    if (exp < 0) throw DomainError("mod_pow: negative exponent");
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

Int mod_inverse(const Int& a, const Int& modulus) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()))
        throw DomainError("mod_inverse: not invertible");
    return r;
}

Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw DomainError("crt: list length mismatch or empty");
    Int x = residues[0] % moduli[0];
    if (x < 0) x += moduli[0];
    Int m = moduli[0];
    for (std::size_t i = 1; i < moduli.size(); ++i) {
        if (gcd(m, moduli[i]) != 1) throw DomainError("crt: moduli not coprime");
        // x' = x + m * ((r_i - x) / m mod m_i)
        Int inv = mod_inverse(m % moduli[i], moduli[i]);
        Int diff = (residues[i] - x) % moduli[i];
        Int t = (diff * inv) % moduli[i];
        if (t < 0) t += moduli[i];
        x += m * t;
        m *= moduli[i];
    }
    return x;
}

std::vector<Fraction> convergents(const Fraction& x) {
    if (x < 0) throw DomainError("convergents: x < 0");
    std::vector<Fraction> out;
    Int num = x.get_num(), den = x.get_den();
    // h_k/k_k recurrences over the continued-fraction quotients of num/den.
    Int h_prev = 1, h_prev2 = 0;
    Int k_prev = 0, k_prev2 = 1;
    Int a = num, b = den;
    while (true) {
        Int q = a / b;
        Int h = q * h_prev + h_prev2;
        Int k = q * k_prev + k_prev2;
        out.emplace_back(Fraction(h, k));
        Int r = a - q * b;
        if (r == 0) break;
        a = b;
        b = r;
        h_prev2 = h_prev; h_prev = h;
        k_prev2 = k_prev; k_prev = k;
    }
    return out;
}

std::optional<Fraction> recover_fraction(const Int& y, const Int& m,
                                         const Int& denom_bound) {
    if (y < 0 || y >= m || denom_bound < 1)
        throw DomainError("recover_fraction: preconditions violated");
    Fraction target(y, m);
    target.canonicalize();
    for (const Fraction& c : convergents(target)) {
        if (c.get_den() > denom_bound) continue;
        Fraction err = target - c;
        if (err < 0) err = -err;
        if (err * m <= 1) return c; // |y/m - a/b| <= 1/m
    }
    return std::nullopt;
}

Int dlog_bsgs(const Int& g, const Int& h, const Int& modulus, const Int& order) {
    Int m = kth_root_floor(order, 2);
    if (m * m < order) ++m; // ceil(sqrt(order))
    std::map<Int, Int> baby; // g^j -> smallest j
    Int cur = 1;
    for (Int j = 0; j < m; ++j) {
        baby.emplace(cur, j); // emplace keeps the smallest j on duplicates
        cur = (cur * g) % modulus;
    }
    Int giant = mod_inverse(mod_pow(g, m, modulus), modulus);
    Int gamma = h % modulus;
    if (gamma < 0) gamma += modulus;
    for (Int i = 0; i <= m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) return i * m + it->second;
        gamma = (gamma * giant) % modulus;
    }
    throw NotInSubgroup("dlog_bsgs: h not in <g>");
}

std::vector<std::pair<Int, unsigned>> trial_division_factor(const Int& n) {
    if (n < 2) throw DomainError("trial_division_factor: n < 2");
    std::vector<std::pair<Int, unsigned>> out;
    Int rest = n;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (Int p = 3; p * p <= rest; p += 2) strip(p);
    if (rest > 1) out.emplace_back(rest, 1);
    return out;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (Int p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

Int next_prime(const Int& n) {
    Int p = n < 2 ? Int(2) : n;
    while (!is_prime(p)) ++p;
    return p;
}

Int uniform_int(Rng& rng, const Int& lo, const Int& hi) {
    if (lo > hi) throw DomainError("uniform_int: empty range");
    Int span = hi - lo + 1;
    std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
    while (true) {
        Int v = 0;
        for (std::size_t b = 0; b < bits; b += 32) {
            v <<= 32;
            v += static_cast<unsigned long>(rng() & 0xffffffffULL);
        }
        v %= Int(1) << bits;
        if (v < span) return lo + v;
    }
}

Int random_prime(Rng& rng, const Int& lo, const Int& hi) {
    for (int tries = 0; tries < 100000; ++tries) {
        Int c = uniform_int(rng, lo, hi);
        if (is_prime(c)) return c;
    }
    // Dense ranges never get here; sweep as a fallback.
    for (Int c = lo; c <= hi; ++c)
        if (is_prime(c)) return c;
    throw DomainError("random_prime: no prime in range");
}

Int kth_root_floor(const Int& n, unsigned long k) {
    if (n < 0 || k < 1) throw DomainError("kth_root_floor: bad arguments");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

std::optional<std::pair<Int, unsigned long>> perfect_power(const Int& n) {
    if (n < 4) return std::nullopt;
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long b = static_cast<unsigned long>(bits); b >= 2; --b) {
        Int a = kth_root_floor(n, b);
        if (a < 2) continue;
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), a.get_mpz_t(), b);
        if (pw == n) return std::make_pair(a, b);
    }
    return std::nullopt;
}

Int round_to_int(const Fraction& q) {
    Int num = q.get_num(), den = q.get_den();
    Int quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int twice = 2 * abs(rem);
    if (twice >= den) quot += (num < 0) ? -1 : 1; // half away from zero
    return quot;
}

Int floor_to_int(const Fraction& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

} // namespace qcw::numt
