#include "qcw/codes.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "qcw/errors.hpp"
#include "qcw/grover.hpp"

namespace qcw::codes {

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix BitMatrix::zero(std::size_t r, std::size_t c) {
    BitMatrix m;
    m.rows = r;
    m.cols = c;
    m.bits.assign(r * ((c + 63) / 64), 0);
    return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m = zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
    return (bits[r * words_per_row() + c / 64] >> (c % 64)) & 1;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = bits[r * words_per_row() + c / 64];
    std::uint64_t mask = std::uint64_t(1) << (c % 64);
    if (v) w |= mask; else w &= ~mask;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    std::size_t wpr = words_per_row();
    for (std::size_t i = 0; i < wpr; ++i) bits[dst * wpr + i] ^= bits[src * wpr + i];
}

BitMatrix BitMatrix::mul(const BitMatrix& other) const {
    if (cols != other.rows) throw DomainError("BitMatrix::mul: shape mismatch");
    BitMatrix out = zero(rows, other.cols);
    std::size_t wpr = out.words_per_row();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            if (get(i, k))
                for (std::size_t w = 0; w < wpr; ++w)
                    out.bits[i * wpr + w] ^= other.bits[k * wpr + w];
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix out = zero(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (get(i, j)) out.set(j, i, true);
    return out;
}

std::size_t BitMatrix::rank() const {
    BitMatrix m = *this;
    std::size_t wpr = m.words_per_row();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && !m.get(pivot, c)) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t w = 0; w < wpr; ++w)
                std::swap(m.bits[r * wpr + w], m.bits[pivot * wpr + w]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        ++r;
    }
    return r;
}

std::optional<BitMatrix> BitMatrix::inverse() const {
    if (rows != cols) throw DomainError("BitMatrix::inverse: not square");
    BitMatrix m = *this;
    BitMatrix inv = identity(rows);
    std::size_t wpr = m.words_per_row();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pivot = c;
        while (pivot < rows && !m.get(pivot, c)) ++pivot;
        if (pivot == rows) return std::nullopt;
        if (pivot != c)
            for (std::size_t w = 0; w < wpr; ++w) {
                std::swap(m.bits[c * wpr + w], m.bits[pivot * wpr + w]);
                std::swap(inv.bits[c * wpr + w], inv.bits[pivot * wpr + w]);
            }
        for (std::size_t i = 0; i < rows; ++i)
            if (i != c && m.get(i, c)) {
                m.xor_row(i, c);
                inv.xor_row(i, c);
            }
    }
    return inv;
}

BitMatrix BitMatrix::select_columns(const std::vector<std::size_t>& idx) const {
    BitMatrix out = zero(rows, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (get(i, idx[j])) out.set(i, j, true);
    return out;
}

// ---------------------------------------------------------------------------
// Bit vectors

unsigned hamming_weight(const BitVec& v) {
    unsigned w = 0;
    for (auto b : v) w += (b & 1);
    return w;
}

unsigned distance(const BitVec& x, const BitVec& y) {
    if (x.size() != y.size()) throw DomainError("distance: length mismatch");
    unsigned d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += ((x[i] ^ y[i]) & 1);
    return d;
}

BitVec xor_vec(const BitVec& x, const BitVec& y) {
    if (x.size() != y.size()) throw DomainError("xor_vec: length mismatch");
    BitVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] ^ y[i]) & 1;
    return out;
}

BitVec mul_vec(const BitVec& v, const BitMatrix& m) {
    if (v.size() != m.rows) throw DomainError("mul_vec: shape mismatch");
    BitVec out(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        if (v[i] & 1)
            for (std::size_t j = 0; j < m.cols; ++j)
                out[j] ^= m.get(i, j);
    return out;
}

std::optional<BitVec> solve_left(const BitMatrix& m, const BitVec& target) {
    std::size_t k = m.rows, n = m.cols;
    if (target.size() != n) throw DomainError("solve_left: shape mismatch");
    // Gaussian elimination on m's rows with coefficient tracking.
    std::vector<BitVec> a(k, BitVec(n, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.get(i, j);
    std::vector<BitVec> coef(k, BitVec(k, 0));
    for (std::size_t i = 0; i < k; ++i) coef[i][i] = 1;
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < n && row < k; ++c) {
        std::size_t p = row;
        while (p < k && !a[p][c]) ++p;
        if (p == k) continue;
        std::swap(a[p], a[row]);
        std::swap(coef[p], coef[row]);
        for (std::size_t i = 0; i < k; ++i)
            if (i != row && a[i][c]) {
                for (std::size_t j = 0; j < n; ++j) a[i][j] ^= a[row][j];
                for (std::size_t j = 0; j < k; ++j) coef[i][j] ^= coef[row][j];
            }
        pivot_col.push_back(c);
        ++row;
    }
    BitVec solution(k, 0);
    BitVec residue = target;
    for (std::size_t i = 0; i < row; ++i)
        if (residue[pivot_col[i]]) {
            for (std::size_t j = 0; j < n; ++j) residue[j] ^= a[i][j];
            for (std::size_t j = 0; j < k; ++j) solution[j] ^= coef[i][j];
        }
    if (hamming_weight(residue) != 0) return std::nullopt;
    return solution;
}

// ---------------------------------------------------------------------------
// GF(2^m)

namespace {
// Irreducible reduction polynomials; bit i = coefficient of x^i.
constexpr std::array<unsigned, 9> kReduction = {
    0,          // m = 0 unused
    0b11,       // x + 1
    0b111,      // x^2 + x + 1
    0b1011,     // x^3 + x + 1
    0b10011,    // x^4 + x + 1
    0b100101,   // x^5 + x^2 + 1
    0b1000011,  // x^6 + x + 1
    0b10000011, // x^7 + x + 1
    0b100011011 // x^8 + x^4 + x^3 + x + 1
};
} // namespace

GF2m::GF2m(unsigned m_) : m(m_) {
    if (m < 1 || m > 8) throw DomainError("GF2m: extension degree out of range");
    reduction = kReduction[m];
}

unsigned GF2m::mul(unsigned a, unsigned b) const {
    unsigned acc = 0;
    while (b) {
        if (b & 1) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> m) a ^= reduction;
    }
    return acc;
}

unsigned GF2m::inv(unsigned a) const {
    if (a == 0) throw DomainError("GF2m::inv: zero");
    return pow(a, size() - 2);
}

unsigned GF2m::pow(unsigned a, unsigned e) const {
    unsigned r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Polynomials over GF(2^m)

namespace {
void gfpoly_trim(GFPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
} // namespace

GFPoly gfpoly_mul(const GF2m& f, const GFPoly& a, const GFPoly& b) {
    if (a.empty() || b.empty()) return {};
    GFPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] ^= f.mul(a[i], b[j]);
    gfpoly_trim(out);
    return out;
}

GFPoly gfpoly_mod(const GF2m& f, GFPoly a, const GFPoly& g) {
    gfpoly_trim(a);
    GFPoly gg = g;
    gfpoly_trim(gg);
    if (gg.empty()) throw DomainError("gfpoly_mod: zero modulus");
    unsigned lead_inv = f.inv(gg.back());
    while (a.size() >= gg.size()) {
        unsigned c = f.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - gg.size();
        for (std::size_t i = 0; i < gg.size(); ++i)
            a[shift + i] ^= f.mul(c, gg[i]);
        gfpoly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

unsigned gfpoly_eval(const GF2m& f, const GFPoly& g, unsigned x) {
    unsigned acc = 0;
    for (std::size_t i = g.size(); i-- > 0;) acc = f.add(f.mul(acc, x), g[i]);
    return acc;
}

std::optional<GFPoly> gfpoly_inv_mod(const GF2m& f, const GFPoly& a, const GFPoly& g) {
    GFPoly r0 = g, r1 = gfpoly_mod(f, a, g);
    GFPoly t0 = {}, t1 = {1};
    gfpoly_trim(r0);
    while (!r1.empty()) {
        GFPoly q;
        GFPoly rem = r0;
        unsigned lead_inv = f.inv(r1.back());
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            unsigned c = f.mul(rem.back(), lead_inv);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] ^= f.mul(c, r1[i]);
            gfpoly_trim(rem);
        }
        GFPoly qt1 = gfpoly_mul(f, q, t1);
        GFPoly t2 = t0;
        if (t2.size() < qt1.size()) t2.resize(qt1.size(), 0);
        for (std::size_t i = 0; i < qt1.size(); ++i) t2[i] ^= qt1[i];
        gfpoly_trim(t2);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    if (r0.size() != 1) return std::nullopt; // gcd is not a unit
    unsigned inv_lead = f.inv(r0[0]);
    GFPoly out = t0;
    for (auto& c : out) c = f.mul(c, inv_lead);
    return gfpoly_mod(f, out, g);
}

bool gfpoly_irreducible(const GF2m& f, const GFPoly& g) {
    GFPoly gg = g;
    gfpoly_trim(gg);
    if (gg.size() < 2) return false;
    std::size_t deg = gg.size() - 1;
    if (deg == 1) return true;
    for (unsigned x = 0; x < f.size(); ++x)
        if (gfpoly_eval(f, gg, x) == 0) return false;
    if (deg <= 3) return true;
    // Brute-force monic divisor scan up to degree deg/2 (tiny fields only).
    std::size_t half = deg / 2;
    for (std::size_t d = 2; d <= half; ++d) {
        std::vector<unsigned> coef(d + 1, 0);
        coef[d] = 1;
        std::function<bool(std::size_t)> scan = [&](std::size_t pos) -> bool {
            if (pos == d) {
                GFPoly dv(coef.begin(), coef.end());
                return gfpoly_mod(f, gg, dv).empty();
            }
            for (unsigned c = 0; c < f.size(); ++c) {
                coef[pos] = c;
                if (scan(pos + 1)) return true;
            }
            return false;
        };
        if (scan(0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Linear codes

namespace {

std::uint64_t pack(const BitVec& v) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] & 1) w |= std::uint64_t(1) << i;
    return w;
}

BitVec unpack(std::uint64_t w, std::size_t n) {
    BitVec v(n, 0);
    for (std::size_t i = 0; i < n; ++i) v[i] = (w >> i) & 1;
    return v;
}

struct Rref {
    BitMatrix mat;
    std::vector<std::size_t> pivots;
};

Rref rref(const BitMatrix& in) {
    Rref out{in, {}};
    BitMatrix& m = out.mat;
    std::size_t wpr = m.words_per_row();
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols && row < m.rows; ++c) {
        std::size_t p = row;
        while (p < m.rows && !m.get(p, c)) ++p;
        if (p == m.rows) continue;
        if (p != row)
            for (std::size_t w = 0; w < wpr; ++w)
                std::swap(m.bits[row * wpr + w], m.bits[p * wpr + w]);
        for (std::size_t i = 0; i < m.rows; ++i)
            if (i != row && m.get(i, c)) m.xor_row(i, row);
        out.pivots.push_back(c);
        ++row;
    }
    return out;
}

// Kernel basis of h (right kernel: vectors x with h x^T = 0), as rows.
BitMatrix kernel_basis(const BitMatrix& h) {
    Rref r = rref(h);
    std::size_t n = h.cols;
    std::vector<std::size_t> free_cols;
    std::size_t pi = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (pi < r.pivots.size() && r.pivots[pi] == c) { ++pi; continue; }
        free_cols.push_back(c);
    }
    BitMatrix out = BitMatrix::zero(free_cols.size(), n);
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        out.set(fi, free_cols[fi], true);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (r.mat.get(i, free_cols[fi])) out.set(fi, r.pivots[i], true);
    }
    return out;
}

} // namespace

unsigned min_distance(const BitMatrix& generator) {
    std::size_t k = generator.rows, n = generator.cols;
    if (k > 20) throw DomainError("min_distance: k too large for enumeration");
    unsigned best = unsigned(n) + 1;
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << k); ++m) {
        BitVec mv = unpack(m, k);
        best = std::min(best, hamming_weight(mul_vec(mv, generator)));
    }
    return best;
}

LinearCode make_code(const BitMatrix& generator, unsigned t) {
    if (generator.cols > 24) throw DomainError("make_code: n > 24");
    if (generator.rank() != generator.rows)
        throw RankError("make_code: generator not full row rank");
    if (t > 0 && generator.rows <= 16 && min_distance(generator) <= 2 * t)
        throw DomainError("make_code: minimum distance must exceed 2t");
    LinearCode code;
    code.generator = generator;
    code.t = t;
    code.parity = kernel_basis(generator); // G H^T = 0 by construction
    std::size_t n = generator.cols;
    BitMatrix ht = code.parity.transpose();
    std::function<void(std::size_t, unsigned, std::uint64_t)> fill =
        [&](std::size_t start, unsigned left, std::uint64_t pattern) {
            if (left == 0) {
                BitVec e = unpack(pattern, n);
                code.syndrome_table.emplace(pack(mul_vec(e, ht)), pattern);
                return;
            }
            for (std::size_t i = start; i + left <= n; ++i)
                fill(i + 1, left - 1, pattern | (std::uint64_t(1) << i));
        };
    for (unsigned w = 0; w <= t; ++w) fill(0, w, 0);
    return code;
}

LinearCode hamming74() {
    BitMatrix g = BitMatrix::zero(4, 7);
    const char* rows[4] = {"1000110", "0100101", "0010011", "0001111"};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 7; ++j)
            g.set(i, j, rows[i][j] == '1');
    return make_code(g, 1);
}

LinearCode goppa_code(unsigned l, const GFPoly& g,
                      const std::vector<unsigned>& alphas) {
    GF2m field(l);
    GFPoly gg = g;
    std::size_t s = gg.size() - 1;
    std::size_t n = alphas.size();
    for (unsigned a : alphas)
        if (gfpoly_eval(field, gg, a) == 0)
            throw DomainError("goppa_code: g(alpha_i) = 0");
    // Column i of the parity check holds the s GF(2^l) coefficients of
    // (x - alpha_i)^{-1} mod g, expanded to bits.
    BitMatrix h = BitMatrix::zero(l * s, n);
    for (std::size_t i = 0; i < n; ++i) {
        GFPoly lin = {alphas[i], 1}; // x - alpha = x + alpha in characteristic 2
        auto inv = gfpoly_inv_mod(field, lin, gg);
        if (!inv) throw DomainError("goppa_code: support element not invertible");
        GFPoly col = *inv;
        col.resize(s, 0);
        for (std::size_t coefi = 0; coefi < s; ++coefi)
            for (unsigned bit = 0; bit < l; ++bit)
                h.set(coefi * l + bit, i, (col[coefi] >> bit) & 1);
    }
    BitMatrix gen = kernel_basis(h);
    if (gen.rows == 0) throw DomainError("goppa_code: trivial code");
    unsigned d = min_distance(gen);
    return make_code(gen, (d - 1) / 2);
}

LinearCode goppa_toy(unsigned l, unsigned s, std::uint64_t seed) {
    GF2m field(l);
    Rng rng(splitmix64(seed));
    unsigned q = field.size();
    for (unsigned tries = 0; tries < 16 * q * q; ++tries) {
        GFPoly g(s + 1, 0);
        g[s] = 1;
        for (unsigned i = 0; i < s; ++i) g[i] = unsigned(rng() % q);
        if (!gfpoly_irreducible(field, g)) continue;
        std::vector<unsigned> alphas;
        for (unsigned a = 0; a < q && alphas.size() < 24; ++a)
            if (gfpoly_eval(field, g, a) != 0) alphas.push_back(a);
        LinearCode code = goppa_code(l, g, alphas);
        if (code.t >= 1) return code;
    }
    throw DomainError("goppa_toy: no usable polynomial found");
}

BitVec decode(const LinearCode& code, const BitVec& received) {
    BitVec syn = mul_vec(received, code.parity.transpose());
    auto it = code.syndrome_table.find(pack(syn));
    if (it == code.syndrome_table.end())
        throw DecodeError("decode: syndrome outside the table");
    return xor_vec(received, unpack(it->second, code.n()));
}

// ---------------------------------------------------------------------------
// McEliece

McElieceKey mceliece_keygen(const LinearCode& code, Rng& rng) {
    std::size_t k = code.k(), n = code.n();
    McElieceKey key;
    key.code = code;
    while (true) { // rejection-sample an invertible scrambler
        BitMatrix s = BitMatrix::zero(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                s.set(i, j, rng() & 1);
        auto inv = s.inverse();
        if (!inv) continue;
        key.s = s;
        key.s_inv = *inv;
        break;
    }
    key.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) key.perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(key.perm[i - 1], key.perm[uniform_u64(rng, i)]);
    // Gbar = S G P; column i of SG lands in column perm[i].
    BitMatrix sg = key.s.mul(code.generator);
    BitMatrix pub = BitMatrix::zero(k, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < k; ++r)
            if (sg.get(r, i)) pub.set(r, key.perm[i], true);
    key.pub = pub;
    return key;
}

BitVec mceliece_encrypt(const BitMatrix& pub, const BitVec& m, unsigned t, Rng& rng) {
    if (m.size() != pub.rows) throw DomainError("mceliece_encrypt: bad message size");
    BitVec c = mul_vec(m, pub);
    std::vector<std::size_t> pos(pub.cols);
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    for (unsigned e = 0; e < t; ++e) {
        std::size_t j = e + uniform_u64(rng, pos.size() - e);
        std::swap(pos[e], pos[j]);
        c[pos[e]] ^= 1;
    }
    return c;
}

BitVec mceliece_decrypt(const McElieceKey& key, const BitVec& c) {
    std::size_t n = key.code.n();
    if (c.size() != n) throw DomainError("mceliece_decrypt: bad length");
    BitVec cp(n, 0); // c P^{-1}
    for (std::size_t i = 0; i < n; ++i) cp[i] = c[key.perm[i]];
    BitVec codeword = decode(key.code, cp);
    auto ms = solve_left(key.code.generator, codeword);
    if (!ms) throw DecodeError("mceliece_decrypt: decoded word outside the code");
    return mul_vec(*ms, key.s_inv);
}

bool attack_success_test(const BitVec& c, const BitVec& m_candidate,
                         const BitMatrix& pub, unsigned t) {
    return hamming_weight(xor_vec(c, mul_vec(m_candidate, pub))) <= t;
}

// ---------------------------------------------------------------------------
// Information-set decoding

namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Colexicographic unranking of the rank-th k-subset of [0, n).
std::vector<std::size_t> unrank_subset(std::uint64_t rank, std::size_t n, std::size_t k) {
    std::vector<std::size_t> out(k);
    for (std::size_t i = k; i > 0; --i) {
        std::size_t c = i - 1;
        while (c + 1 <= n && binomial(c + 1, i) <= rank) ++c;
        out[i - 1] = c;
        rank -= binomial(c, i);
    }
    return out;
}

std::optional<BitVec> try_subset(const BitMatrix& pub, const BitVec& c,
                                 unsigned t, const std::vector<std::size_t>& cols) {
    BitMatrix sub = pub.select_columns(cols);
    auto inv = sub.inverse();
    if (!inv) return std::nullopt;
    BitVec chat(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) chat[i] = c[cols[i]];
    BitVec m = mul_vec(chat, *inv);
    if (attack_success_test(c, m, pub, t)) return m;
    return std::nullopt;
}

} // namespace

IsdResult isd_attack(const BitMatrix& pub, const BitVec& c, unsigned t,
                     Rng& rng, IsdMode mode, std::size_t budget) {
    std::size_t k = pub.rows, n = pub.cols;
    IsdResult res;
    if (mode == IsdMode::classical) {
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[i] = i;
        for (std::size_t it = 0; it < budget; ++it) {
            for (std::size_t i = 0; i < k; ++i)
                std::swap(pos[i], pos[i + uniform_u64(rng, n - i)]);
            std::vector<std::size_t> cols(pos.begin(), pos.begin() + k);
            ++res.predicate_evals;
            BitMatrix sub = pub.select_columns(cols);
            auto inv = sub.inverse();
            if (!inv) { ++res.singular_skips; continue; }
            BitVec chat(k);
            for (std::size_t i = 0; i < k; ++i) chat[i] = c[cols[i]];
            BitVec m = mul_vec(chat, *inv);
            if (attack_success_test(c, m, pub, t)) {
                res.message = m;
                return res;
            }
        }
        throw AttackBudgetExceeded("isd_attack: classical budget exhausted");
    }

    // Grover mode over subset ranks; the count of error-avoiding information
    // sets, C(n - t, k), is public knowledge used as the marked-count hint.
    std::uint64_t total = binomial(n, k);
    grover::SearchProblem problem{
        std::size_t(total),
        [&](std::size_t rank) {
            return try_subset(pub, c, t, unrank_subset(rank, n, k)).has_value();
        },
        std::size_t(binomial(n - t, k))};
    for (std::size_t round = 0; round < budget; ++round) {
        auto found = grover::grover_search(problem, rng);
        res.predicate_evals += found.oracle_calls;
        if (found.index) {
            auto m = try_subset(pub, c, t, unrank_subset(*found.index, n, k));
            if (m) {
                res.message = *m;
                return res;
            }
        }
    }
    throw AttackBudgetExceeded("isd_attack: grover budget exhausted");
}

std::string bitmatrix_to_hex_json(const BitMatrix& m) {
    std::ostringstream os;
    os << "{\"rows\":" << m.rows << ",\"cols\":" << m.cols << ",\"data\":[";
    for (std::size_t r = 0; r < m.rows; ++r) {
        std::uint64_t w = 0;
        for (std::size_t c = 0; c < m.cols; ++c)
            if (m.get(r, c)) w |= std::uint64_t(1) << c;
        os << (r ? "," : "") << "\"" << std::hex << w << std::dec << "\"";
    }
    os << "]}";
    return os.str();
}

} // namespace qcw::codes
