#include "qcw/ggh.hpp"

#include <algorithm>
#include <cmath>

#include "qcw/errors.hpp"

namespace qcw::ggh {

using lattice::Fraction;
using lattice::RatVec;

GghKeyPair ggh_keygen(std::size_t dim, Rng& rng, const Int& sigma, const Int& diag) {
    if (dim < 2) throw DomainError("ggh_keygen: dim < 2");
    Int scale = sigma > 1 ? sigma : Int(1);
    Int k = diag > 0 ? diag : 4 * Int(std::lround(std::sqrt(double(dim)))) * scale;
    while (true) {
        IntBasis priv;
        for (std::size_t i = 0; i < dim; ++i) {
            IntVec row(dim, 0);
            for (std::size_t j = 0; j < dim; ++j)
                row[j] = Int(long(rng() % 9)) - 4; // noise in [-4, 4]
            row[i] += k;
            priv.rows.push_back(row);
        }
        if (lattice::determinant(priv) == 0) continue;
        IntBasis pub = priv; // scramble with elementary unimodular row ops
        std::size_t ops = 2 * dim * dim;
        for (std::size_t o = 0; o < ops; ++o) {
            std::size_t i = rng() % dim, j = rng() % dim;
            if (i == j) continue;
            long c = long(rng() % 7) - 3;
            if (c == 0) c = 1;
            for (std::size_t col = 0; col < dim; ++col)
                pub.rows[i][col] += Int(c) * pub.rows[j][col];
        }
        double dr = lattice::orthogonality_defect(priv);
        double db = lattice::orthogonality_defect(pub);
        if (dr > db) continue; // resample until the asymmetry holds
        return {pub, sigma, priv};
    }
}

IntVec ggh_encrypt(const IntBasis& pub, const Int& sigma, const IntVec& m, Rng& rng) {
    std::size_t dim = pub.dim();
    if (m.size() != dim) throw DomainError("ggh_encrypt: message length mismatch");
    IntVec c(pub.ambient(), 0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t col = 0; col < pub.ambient(); ++col)
            c[col] += m[i] * pub.rows[i][col];
    for (auto& x : c) x += (rng() & 1) ? sigma : -sigma;
    return c;
}


std::optional<IntVec> ggh_decrypt(const GghKeyPair& key, const IntVec& c) {
    IntVec v = lattice::babai_round(key.priv, c);
    // re-encryption check: the residual error must be exactly +-sigma
    for (std::size_t i = 0; i < c.size(); ++i) {
        Int e = c[i] - v[i];
        if (e != key.sigma && e != -key.sigma) return std::nullopt;
    }
    return lattice::coefficients_in(key.pub, v);
}

IntVec attack_round(const IntBasis& pub, const IntVec& c) {
    IntBasis reduced = lattice::lll_reduce(pub);
    IntVec v = lattice::babai_round(reduced, c);
    return lattice::coefficients_in(pub, v);
}

IntVec attack_nearest_plane(const IntBasis& pub, const IntVec& c) {
    IntBasis reduced = lattice::lll_reduce(pub);
    IntVec v = lattice::babai_nearest_plane(reduced, c);
    return lattice::coefficients_in(pub, v);
}

IntVec attack_embed(const IntBasis& pub, const Int& sigma, const IntVec& c) {
    IntBasis embedded = lattice::embed_cvp(pub, c);
    IntBasis reduced = lattice::lll_reduce(embedded);
    std::size_t n = pub.ambient();
    for (const auto& row : reduced.rows) {
        Int last = row[n];
        if (last != 1 && last != -1) continue;
        bool shape = true;
        for (std::size_t i = 0; i < n; ++i)
            if (row[i] != sigma && row[i] != -sigma) { shape = false; break; }
        if (!shape) continue;
        IntVec e(n); // row = +-(e || 1); orient so the tail is +1
        for (std::size_t i = 0; i < n; ++i) e[i] = last == 1 ? row[i] : -row[i];
        IntVec lattice_point(n);
        for (std::size_t i = 0; i < n; ++i) lattice_point[i] = c[i] - e[i];
        return lattice::coefficients_in(pub, lattice_point);
    }
    throw AttackFailed("attack_embed: no (+-e || +-1) row after reduction");
}

// ---------------------------------------------------------------------------
// Nguyen's mod-2sigma attack

namespace {

// Row/column diagonalisation over Z: u * a * v = d with u, v unimodular.
struct Diag {
    std::vector<IntVec> u, v, d;
};

Diag diagonalize(std::vector<IntVec> a) {
    std::size_t n = a.size();
    Diag out;
    out.u.assign(n, IntVec(n, 0));
    out.v.assign(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) out.u[i][i] = out.v[i][i] = 1;

    auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t c = 0; c < n; ++c) {
            a[dst][c] -= q * a[src][c];
            out.u[dst][c] -= q * out.u[src][c];
        }
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t r = 0; r < n; ++r) {
            a[r][dst] -= q * a[r][src];
            out.v[r][dst] -= q * out.v[r][src];
        }
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(out.u[i], out.u[j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) {
            std::swap(a[r][i], a[r][j]);
            std::swap(out.v[r][i], out.v[r][j]);
        }
    };

    for (std::size_t k = 0; k < n; ++k) {
        while (true) {
            std::size_t bi = n, bj = n;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (a[i][j] != 0 && (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) break; // trailing block all zero
            if (bi != k) row_swap(k, bi);
            if (bj != k) col_swap(k, bj);
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
                    row_sub(i, k, q);
                    if (a[i][k] != 0) clean = false;
                }
            for (std::size_t j = k + 1; j < n; ++j)
                if (a[k][j] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
                    col_sub(j, k, q);
                    if (a[k][j] != 0) clean = false;
                }
            if (clean) break;
        }
    }
    out.d = a;
    return out;
}

Int mod_pos(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

NguyenResult attack_nguyen(const IntBasis& pub, const Int& sigma, const IntVec& c) {
    std::size_t d = pub.dim();
    Int mod = 2 * sigma;
    // Solve x B = c + s (mod 2 sigma) through B^T x^T = (c + s)^T.
    std::vector<IntVec> bt(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) bt[i][j] = pub.rows[j][i];
    Diag snf = diagonalize(bt);
    IntVec rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = c[i] + sigma;
    IntVec w(d, 0); // w = U rhs
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w[i] += snf.u[i][j] * rhs[j];
    // Coordinatewise congruences d_i y_i = w_i (mod 2 sigma).
    std::vector<std::vector<Int>> choices(d);
    Int total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        Int di = mod_pos(snf.d[i][i], mod);
        Int wi = mod_pos(w[i], mod);
        Int g = numt::gcd(di == 0 ? mod : di, mod);
        if (wi % g != 0) throw AttackFailed("attack_nguyen: no solution mod 2 sigma");
        Int step = mod / g;
        Int base = 0;
        if (di != 0 && step > 1)
            base = mod_pos((wi / g) * numt::mod_inverse(di / g, step), step);
        for (Int t = 0; t < g; ++t)
            choices[i].push_back(mod_pos(base + t * step, mod));
        total *= g;
        if (total > 64)
            throw AttackFailed("attack_nguyen: solution space exceeds 64 candidates");
    }
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        IntVec y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = choices[i][idx[i]];
        IntVec x(d, 0); // x = V y (mod 2 sigma)
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) x[i] += snf.v[i][j] * y[j];
            x[i] = mod_pos(x[i], mod);
        }
        bool congruent = true;
        for (std::size_t col = 0; col < d && congruent; ++col) {
            Int acc = 0;
            for (std::size_t i = 0; i < d; ++i) acc += x[i] * pub.rows[i][col];
            if (mod_pos(acc - rhs[col], mod) != 0) congruent = false;
        }
        if (congruent) {
            // finish: (c - x B)/sigma = mhat (2B) + e~ with e~ in {+-1}^d
            IntVec ctilde(d);
            bool divisible = true;
            for (std::size_t col = 0; col < d && divisible; ++col) {
                Int acc = c[col];
                for (std::size_t i = 0; i < d; ++i) acc -= x[i] * pub.rows[i][col];
                if (acc % sigma != 0) divisible = false;
                else ctilde[col] = acc / sigma;
            }
            if (divisible) {
                IntBasis twob = pub;
                for (auto& row : twob.rows)
                    for (auto& vv : row) vv *= 2;
                try {
                    IntVec mhat = attack_embed(twob, 1, ctilde);
                    IntVec m(d);
                    for (std::size_t i = 0; i < d; ++i) m[i] = x[i] + mod * mhat[i];
                    bool verified = true;
                    for (std::size_t col = 0; col < d && verified; ++col) {
                        Int acc = c[col];
                        for (std::size_t i = 0; i < d; ++i) acc -= m[i] * pub.rows[i][col];
                        if (acc != sigma && acc != -sigma) verified = false;
                    }
                    if (verified) return {x, m};
                } catch (const AttackFailed&) {
                }
            }
        }
        std::size_t pos = 0;
        while (pos < d) {
            if (++idx[pos] < choices[pos].size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == d) break;
    }
    throw AttackFailed("attack_nguyen: no candidate verified");
}

} // namespace qcw::ggh
