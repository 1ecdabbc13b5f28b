#include "qcw/otu.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcw/errors.hpp"
#include "qcw/hsp.hpp"

namespace qcw::otu {

Int binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Int r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r *= Int(long(n - i));
        r /= Int(long(i + 1));
    }
    return r;
}

QpkcKeyPair qpkc_keygen(std::size_t n, std::size_t k, Rng& rng,
                        bool classical_dlog) {
    if (n < k || k < 1) throw DomainError("qpkc_keygen: need n >= k >= 1");
    QpkcKeyPair key;
    key.n = n;
    key.k = k;
    // p_i: the first n primes; their norms (absolute values) are coprime.
    key.p.clear();
    Int prime = 2;
    for (std::size_t i = 0; i < n; ++i) {
        key.p.push_back(prime);
        prime = numt::next_prime(prime + 1);
    }
    // q: smallest prime above every k-fold product, so each product lies in
    // the unique-representative set R = {0..q-1}.
    Int max_product = 1;
    for (std::size_t i = n - k; i < n; ++i) max_product *= key.p[i];
    key.q = numt::next_prime(max_product + 1);
    // generator of F_q^* by exhaustive order check on the factored group order
    Int order = key.q - 1;
    auto factors = numt::trial_division_factor(order);
    key.g = 0;
    for (Int cand = 2; cand < key.q; ++cand) {
        bool generator = true;
        for (auto& [pf, e] : factors)
            if (numt::mod_pow(cand, order / pf, key.q) == 1) {
                generator = false;
                break;
            }
        if (generator) { key.g = cand; break; }
    }
    if (key.g == 0) throw DomainError("qpkc_keygen: no generator found");
    // q_i = dlog_g(p_i), the quantum step of the key generation
    key.qexp.clear();
    if (classical_dlog) {
        for (std::size_t i = 0; i < n; ++i)
            key.qexp.push_back(numt::dlog_bsgs(key.g, key.p[i], key.q, order));
    } else {
        hsp::Group group = hsp::zn_star(key.q);
        for (std::size_t i = 0; i < n; ++i)
            key.qexp.push_back(hsp::dlog(group, key.g, key.p[i], order, rng));
    }
    while (true) { // redraw d when a masked exponent collapses to zero
        key.d = numt::uniform_int(rng, 0, order - 1);
        key.b.clear();
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            Int bi = (key.qexp[i] + key.d) % order;
            if (bi == 0) { ok = false; break; }
            key.b.push_back(bi);
        }
        if (ok) return key;
    }
}

std::vector<int> encode_message(const Int& m, std::size_t n, std::size_t k) {
    if (m < 0 || m >= binomial(n, k))
        throw DomainError("encode_message: message out of range");
    std::vector<int> s(n, 0);
    Int rest = m;
    std::size_t l = k;
    for (std::size_t i = 1; i <= n; ++i) {
        Int c = binomial(n - i, l);
        if (rest >= c) {
            s[i - 1] = 1;
            rest -= c;
            --l;
        }
    }
    if (l != 0) throw DomainError("encode_message: ranking failed");
    return s;
}

Int decode_message(const std::vector<int>& s, std::size_t k) {
    std::size_t n = s.size();
    Int m = 0;
    std::size_t l = k;
    for (std::size_t i = 1; i <= n; ++i) {
        if (s[i - 1]) {
            m += binomial(n - i, l);
            --l;
        }
    }
    if (l != 0) throw DomainError("decode_message: weight mismatch");
    return m;
}

Int qpkc_encrypt(const QpkcKeyPair& pub, const Int& m) {
    std::vector<int> s = encode_message(m, pub.n, pub.k);
    Int c = 0;
    for (std::size_t i = 0; i < pub.n; ++i)
        if (s[i]) c += pub.b[i];
    return c;
}

Int qpkc_decrypt(const QpkcKeyPair& key, const Int& c) {
    Int order = key.q - 1;
    Int r = (c - Int(long(key.k)) * key.d) % order;
    if (r < 0) r += order;
    Int u = numt::mod_pow(key.g, r, key.q);
    // v = the representative of u in R = {0..q-1} equals the subset product
    Int v = u;
    std::vector<int> s(key.n, 0);
    std::size_t weight = 0;
    for (std::size_t i = 0; i < key.n; ++i) {
        if (v % key.p[i] == 0) {
            s[i] = 1;
            v /= key.p[i];
            ++weight;
        }
    }
    if (v != 1 || weight != key.k)
        throw IntegrityError("qpkc_decrypt: residue is not a weight-k subset product");
    return decode_message(s, key.k);
}

double ssp_density(const std::vector<Int>& b_values) {
    if (b_values.empty()) throw DomainError("ssp_density: empty instance");
    Int mx = 1;
    for (const Int& b : b_values) {
        if (b < 1) throw DomainError("ssp_density: b_i < 1");
        mx = std::max(mx, b);
    }
    return double(b_values.size()) / std::log2(mx.get_d());
}

std::string key_to_json(const QpkcKeyPair& key) {
    std::ostringstream os;
    os << "{\"n\":" << key.n << ",\"k\":" << key.k << ",\"b\":[";
    for (std::size_t i = 0; i < key.b.size(); ++i)
        os << (i ? "," : "") << "\"" << key.b[i].get_str() << "\"";
    os << "]}";
    return os.str();
}

} // namespace qcw::otu
