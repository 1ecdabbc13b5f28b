#include "qcw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "qcw/errors.hpp"

namespace qcw::lattice {

void check_basis(const IntBasis& basis) {
    if (basis.rows.empty()) throw RankError("basis: empty");
    std::size_t n = basis.rows[0].size();
    for (const auto& r : basis.rows)
        if (r.size() != n) throw RankError("basis: ragged rows");
    if (basis.dim() > n) throw RankError("basis: more rows than ambient dimension");
    gram_schmidt(basis); // throws on dependence
}

Int dot(const IntVec& a, const IntVec& b) {
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Int norm_sq(const IntVec& a) { return dot(a, a); }

namespace {

Fraction rat_dot_int(const RatVec& a, const IntVec& b) {
    Fraction acc(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) acc += a[i] * Fraction(b[i]);
    return acc;
}

Fraction rat_dot(const RatVec& a, const RatVec& b) {
    Fraction acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Recompute GSO rows [from, d).
void gso_update_from(const IntBasis& basis, Gso& g, std::size_t from) {
    std::size_t d = basis.dim(), n = basis.ambient();
    for (std::size_t i = from; i < d; ++i) {
        RatVec v(n);
        for (std::size_t c = 0; c < n; ++c) v[c] = Fraction(basis.rows[i][c]);
        g.mu[i].assign(i, Fraction(0));
        for (std::size_t j = 0; j < i; ++j) {
            Fraction m = rat_dot_int(g.bstar[j], basis.rows[i]) / g.bstar_norm_sq[j];
            g.mu[i][j] = m;
            for (std::size_t c = 0; c < n; ++c)
                if (m != 0) v[c] -= m * g.bstar[j][c];
        }
        g.bstar[i] = v;
        g.bstar_norm_sq[i] = rat_dot(v, v);
        if (g.bstar_norm_sq[i] == 0) throw RankError("gram_schmidt: dependent rows");
    }
}

} // namespace

Gso gram_schmidt(const IntBasis& basis) {
    std::size_t d = basis.dim(), n = basis.ambient();
    Gso g;
    g.bstar.assign(d, RatVec(n, Fraction(0)));
    g.mu.assign(d, {});
    g.bstar_norm_sq.assign(d, Fraction(0));
    gso_update_from(basis, g, 0);
    return g;
}

IntBasis lll_reduce(const IntBasis& basis, const Fraction& delta) {
    if (delta <= Fraction(1, 4) || delta >= 1)
        throw DomainError("lll_reduce: delta outside (1/4, 1)");
    IntBasis b = basis;
    std::size_t d = b.dim();
    if (d <= 1) return b;
    Gso g = gram_schmidt(b);
    std::size_t k = 1;
    while (k < d) {
        // Size-reduce row k; bstar_k is invariant, only mu[k][*] moves.
        for (std::size_t j = k; j-- > 0;) {
            Int r = numt::round_to_int(g.mu[k][j]);
            if (r != 0) {
                for (std::size_t c = 0; c < b.ambient(); ++c)
                    b.rows[k][c] -= r * b.rows[j][c];
                for (std::size_t jj = 0; jj < j; ++jj)
                    g.mu[k][jj] -= Fraction(r) * g.mu[j][jj];
                g.mu[k][j] -= Fraction(r);
            }
        }
        Fraction lhs = g.bstar_norm_sq[k];
        Fraction rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bstar_norm_sq[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b.rows[k], b.rows[k - 1]);
            gso_update_from(b, g, k - 1);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return b;
}

std::optional<std::vector<IntVec>> change_of_basis(const IntBasis& from,
                                                   const IntBasis& to) {
    std::size_t d = from.dim(), n = from.ambient();
    if (to.dim() != d || to.ambient() != n) return std::nullopt;
    std::vector<IntVec> u;
    for (std::size_t r = 0; r < d; ++r) {
        // Solve x * from = to.rows[r]; require integer x.
        std::vector<RatVec> eq; // d coefficients + rhs per ambient coordinate
        for (std::size_t c = 0; c < n; ++c) {
            RatVec e(d + 1);
            for (std::size_t i = 0; i < d; ++i) e[i] = Fraction(from.rows[i][c]);
            e[d] = Fraction(to.rows[r][c]);
            eq.push_back(e);
        }
        std::size_t row = 0;
        std::vector<std::size_t> piv;
        for (std::size_t v = 0; v < d && row < eq.size(); ++v) {
            std::size_t p = row;
            while (p < eq.size() && eq[p][v] == 0) ++p;
            if (p == eq.size()) continue;
            std::swap(eq[p], eq[row]);
            for (std::size_t i = 0; i < eq.size(); ++i)
                if (i != row && eq[i][v] != 0) {
                    Fraction f = eq[i][v] / eq[row][v];
                    for (std::size_t cc = 0; cc <= d; ++cc) eq[i][cc] -= f * eq[row][cc];
                }
            piv.push_back(v);
            ++row;
        }
        if (piv.size() != d) return std::nullopt;
        IntVec x(d);
        for (std::size_t i = 0; i < d; ++i) {
            Fraction val = eq[i][d] / eq[i][piv[i]];
            if (val.get_den() != 1) return std::nullopt;
            x[piv[i]] = val.get_num();
        }
        for (std::size_t i = d; i < eq.size(); ++i)
            if (eq[i][d] != 0) return std::nullopt;
        u.push_back(x);
    }
    return u;
}

// ---------------------------------------------------------------------------
// Enumeration (Fincke-Pohst with exact rational pruning)

namespace {

struct Enumerator {
    const IntBasis& basis;
    Gso gso;
    RatVec tau;        // target coordinates in the bstar frame
    bool exclude_zero; // SVP mode
    std::optional<Int> coeff_bound;
    std::optional<Fraction> best_cost;
    IntVec best_coeff;
    bool collect = false;
    Fraction collect_bound{0};
    std::vector<std::pair<Fraction, IntVec>>* sink = nullptr;

    Enumerator(const IntBasis& b, const IntVec* target)
        : basis(b), gso(gram_schmidt(b)) {
        std::size_t d = b.dim();
        tau.assign(d, Fraction(0));
        if (target)
            for (std::size_t i = 0; i < d; ++i)
                tau[i] = rat_dot_int(gso.bstar[i], *target) / gso.bstar_norm_sq[i];
        exclude_zero = (target == nullptr);
    }

    void run() {
        IntVec coeff(basis.dim(), 0);
        descend(basis.dim(), Fraction(0), coeff);
    }

    void leaf(const Fraction& cost, const IntVec& coeff) {
        if (exclude_zero &&
            std::all_of(coeff.begin(), coeff.end(), [](const Int& c) { return c == 0; }))
            return;
        if (collect) {
            if (cost <= collect_bound) sink->emplace_back(cost, coeff);
            return;
        }
        if (!best_cost || cost < *best_cost) {
            best_cost = cost;
            best_coeff = coeff;
        }
    }

    bool within(const Fraction& total) const {
        return collect ? total <= collect_bound : (!best_cost || total < *best_cost);
    }

    // Levels [0, top) remain; `cost` carries the fixed levels.
    void descend(std::size_t top, const Fraction& cost, IntVec& coeff) {
        if (top == 0) {
            leaf(cost, coeff);
            return;
        }
        std::size_t i = top - 1;
        Fraction centre = tau[i];
        for (std::size_t j = top; j < basis.dim(); ++j)
            centre -= gso.mu[j][i] * Fraction(coeff[j]);
        Int x0 = numt::round_to_int(centre);
        bool low_side_first = Fraction(x0) <= centre;
        for (int dir = 0; dir < 2; ++dir) {
            Int x = x0;
            Int step = low_side_first ? -1 : 1; // walks away from the centre
            if (dir == 1) {
                step = -step;
                x = x0 + step;
            }
            while (true) {
                Fraction diff = Fraction(x) - centre;
                Fraction total = cost + diff * diff * gso.bstar_norm_sq[i];
                if (!within(total)) break;
                if (coeff_bound && (x > *coeff_bound || x < -*coeff_bound))
                    throw BoundError("enumeration: coefficient bound insufficient");
                coeff[i] = x;
                descend(i, total, coeff);
                coeff[i] = 0;
                x += step;
            }
        }
    }
};

IntVec coeff_to_vec(const IntBasis& basis, const IntVec& coeff) {
    IntVec v(basis.ambient(), 0);
    for (std::size_t i = 0; i < basis.dim(); ++i)
        for (std::size_t c = 0; c < basis.ambient(); ++c)
            v[c] += coeff[i] * basis.rows[i][c];
    return v;
}

} // namespace

IntVec svp_brute(const IntBasis& basis, std::optional<Int> coeff_bound) {
    check_basis(basis);
    if (basis.dim() > 8) throw DomainError("svp_brute: dimension > 8");
    Enumerator e(basis, nullptr);
    e.coeff_bound = coeff_bound;
    Fraction init(norm_sq(basis.rows[0]));
    for (const auto& r : basis.rows) init = std::min(init, Fraction(norm_sq(r)));
    e.best_cost = init + 1; // the shortest row is a witness within the bound
    e.run();
    return coeff_to_vec(basis, e.best_coeff);
}

IntVec cvp_brute(const IntBasis& basis, const IntVec& target,
                 std::optional<Int> coeff_bound) {
    check_basis(basis);
    if (basis.dim() > 8) throw DomainError("cvp_brute: dimension > 8");
    if (target.size() != basis.ambient())
        throw DomainError("cvp_brute: target length mismatch");
    Enumerator e(basis, &target);
    e.coeff_bound = coeff_bound;
    e.run();
    return coeff_to_vec(basis, e.best_coeff);
}

std::vector<Int> successive_minima_sq_brute(const IntBasis& basis) {
    check_basis(basis);
    std::size_t d = basis.dim();
    if (d > 6) throw DomainError("successive_minima: dimension > 6");
    IntBasis red = lll_reduce(basis);
    Int bound = 0; // lambda_d is at most the longest reduced row
    for (const auto& r : red.rows) bound = std::max(bound, norm_sq(r));
    std::vector<std::pair<Fraction, IntVec>> found;
    Enumerator e(red, nullptr);
    e.collect = true;
    e.collect_bound = Fraction(bound);
    e.sink = &found;
    e.run();
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<IntVec> picked;
    std::vector<Int> minima;
    for (const auto& [cost, coeff] : found) {
        IntVec v = coeff_to_vec(red, coeff);
        std::vector<RatVec> m;
        for (const auto& p : picked) {
            RatVec r(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) r[i] = Fraction(p[i]);
            m.push_back(std::move(r));
        }
        RatVec rv(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) rv[i] = Fraction(v[i]);
        m.push_back(std::move(rv));
        std::size_t rank = 0, cols = v.size();
        for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
            std::size_t p = rank;
            while (p < m.size() && m[p][c] == 0) ++p;
            if (p == m.size()) continue;
            std::swap(m[p], m[rank]);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != rank && m[i][c] != 0) {
                    Fraction f = m[i][c] / m[rank][c];
                    for (std::size_t cc = 0; cc < cols; ++cc) m[i][cc] -= f * m[rank][cc];
                }
            ++rank;
        }
        if (rank == picked.size() + 1) {
            picked.push_back(v);
            minima.push_back(cost.get_num() / cost.get_den());
            if (picked.size() == d) break;
        }
    }
    if (minima.size() != d)
        throw BoundError("successive_minima: bound failed to cover d vectors");
    return minima;
}

double lattice_gap(const IntBasis& basis) {
    auto minima = successive_minima_sq_brute(basis);
    return std::sqrt(minima[1].get_d() / minima[0].get_d());
}

IntVec coefficients_in(const IntBasis& basis, const IntVec& v) {
    if (basis.ambient() != basis.dim() || v.size() != basis.dim())
        throw RankError("coefficients_in: basis not square or length mismatch");
    std::size_t d = basis.dim();
    std::vector<RatVec> eq(d, RatVec(d + 1));
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t i = 0; i < d; ++i) eq[c][i] = Fraction(basis.rows[i][c]);
        eq[c][d] = Fraction(v[c]);
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t p = col;
        while (p < d && eq[p][col] == 0) ++p;
        if (p == d) throw RankError("coefficients_in: singular basis");
        std::swap(eq[p], eq[col]);
        for (std::size_t i = 0; i < d; ++i)
            if (i != col && eq[i][col] != 0) {
                Fraction f = eq[i][col] / eq[col][col];
                for (std::size_t cc = 0; cc <= d; ++cc) eq[i][cc] -= f * eq[col][cc];
            }
    }
    IntVec out(d);
    for (std::size_t col = 0; col < d; ++col) {
        Fraction val = eq[col][d] / eq[col][col];
        if (val.get_den() != 1)
            throw DomainError("coefficients_in: vector outside the lattice");
        out[col] = val.get_num();
    }
    return out;
}
IntVec babai_round(const IntBasis& basis, const IntVec& target) {
    std::size_t d = basis.dim();
    if (basis.ambient() != d) throw RankError("babai_round: basis not square");
    if (target.size() != d) throw DomainError("babai_round: target length mismatch");
    std::vector<RatVec> eq(d, RatVec(d + 1));
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t i = 0; i < d; ++i) eq[c][i] = Fraction(basis.rows[i][c]);
        eq[c][d] = Fraction(target[c]);
    }
    for (std::size_t v = 0; v < d; ++v) {
        std::size_t p = v;
        while (p < d && eq[p][v] == 0) ++p;
        if (p == d) throw RankError("babai_round: singular basis");
        std::swap(eq[p], eq[v]);
        for (std::size_t i = 0; i < d; ++i)
            if (i != v && eq[i][v] != 0) {
                Fraction f = eq[i][v] / eq[v][v];
                for (std::size_t cc = 0; cc <= d; ++cc) eq[i][cc] -= f * eq[v][cc];
            }
    }
    IntVec coeff(d);
    for (std::size_t v = 0; v < d; ++v)
        coeff[v] = numt::round_to_int(eq[v][d] / eq[v][v]);
    return coeff_to_vec(basis, coeff);
}

IntVec babai_nearest_plane(const IntBasis& basis, const IntVec& target) {
    check_basis(basis);
    if (target.size() != basis.ambient())
        throw DomainError("babai_nearest_plane: target length mismatch");
    Gso g = gram_schmidt(basis);
    std::size_t d = basis.dim(), n = basis.ambient();
    RatVec b(n);
    for (std::size_t c = 0; c < n; ++c) b[c] = Fraction(target[c]);
    IntVec result(n, 0);
    for (std::size_t i = d; i-- > 0;) {
        Fraction m = rat_dot(b, g.bstar[i]) / g.bstar_norm_sq[i];
        Int c = numt::round_to_int(m);
        for (std::size_t cc = 0; cc < n; ++cc) {
            b[cc] -= Fraction(c * basis.rows[i][cc]);
            result[cc] += c * basis.rows[i][cc];
        }
    }
    return result;
}

Int determinant(const IntBasis& basis) {
    std::size_t d = basis.dim();
    if (basis.ambient() != d) throw RankError("determinant: basis not square");
    std::vector<IntVec> m = basis.rows; // Bareiss fraction-free elimination
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < d && m[p][k] == 0) ++p;
            if (p == d) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i)
            for (std::size_t j = k + 1; j < d; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[d - 1][d - 1];
}

double orthogonality_defect(const IntBasis& basis) {
    Int det = determinant(basis);
    if (det == 0) throw RankError("orthogonality_defect: singular basis");
    double log_prod = 0.0;
    for (const auto& r : basis.rows)
        log_prod += 0.5 * std::log(norm_sq(r).get_d());
    double log_det = std::log(std::abs(det.get_d()));
    return std::exp(log_prod - log_det);
}

std::pair<double, double> gaussian_heuristic(double det_magnitude, std::size_t d) {
    if (det_magnitude <= 0 || d < 1)
        throw DomainError("gaussian_heuristic: bad arguments");
    double root = std::pow(det_magnitude, 1.0 / double(d));
    double low = root * std::sqrt(double(d) / (2.0 * M_PI * M_E));
    double high = root * std::sqrt(double(d) / (M_PI * M_E));
    return {low, high};
}

IntBasis embed_cvp(const IntBasis& basis, const IntVec& c) {
    if (c.size() != basis.ambient())
        throw DomainError("embed_cvp: vector length mismatch");
    IntBasis out;
    for (const auto& r : basis.rows) {
        IntVec row = r;
        row.push_back(0);
        out.rows.push_back(row);
    }
    IntVec last = c;
    last.push_back(1);
    out.rows.push_back(last);
    return out;
}

std::string basis_to_json(const IntBasis& basis) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : basis.rows) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : r) row.push_back(v.get_str());
        rows.push_back(row);
    }
    return rows.dump();
}

IntBasis basis_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    IntBasis b;
    for (const auto& row : j) {
        IntVec r;
        for (const auto& v : row) r.emplace_back(v.get<std::string>());
        b.rows.push_back(r);
    }
    return b;
}

} // namespace qcw::lattice
