#include "qcw/quad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcw/errors.hpp"

namespace qcw::quad {

QuadOrder make_order(const Int& delta) {
    Int mod4 = delta % 4;
    if (mod4 < 0) mod4 += 4;
    if (mod4 != 0 && mod4 != 1)
        throw DomainError("make_order: discriminant not 0 or 1 mod 4");
    Int ad = abs(delta);
    Int root = numt::kth_root_floor(ad, 2);
    if (delta > 0 && root * root == delta)
        throw DomainError("make_order: discriminant is a perfect square");
    QuadOrder o;
    o.disc = delta;
    o.isqrt_disc = root;
    o.sqrt_disc = delta > 0 ? sqrtl((long double)delta.get_d()) : 0.0L;
    return o;
}

void check_ideal(const QuadIdeal& ideal, const QuadOrder& order) {
    if (ideal.a <= 0) throw DomainError("ideal: a <= 0");
    Int r = (ideal.b * ideal.b - order.disc) % (4 * ideal.a);
    if (r != 0) throw DomainError("ideal: b^2 != disc mod 4a");
}

QuadIdeal unit_ideal(const QuadOrder& order) {
    if (order.disc < 0) {
        Int b = abs(order.disc % 2);
        return {1, b};
    }
    // real: the reduced b for a = 1 lies in (sqrt(D) - 2, sqrt(D))
    Int b = order.isqrt_disc;
    if ((b - order.disc) % 2 != 0) b -= 1;
    return {1, b};
}

// ---------------------------------------------------------------------------
// Imaginary reduction and composition

namespace {

Int form_c(const QuadIdeal& f, const QuadOrder& order) {
    return (f.b * f.b - order.disc) / (4 * f.a);
}

// Normalize b into (-a, a].
Int normalize_b(const Int& b, const Int& a) {
    Int m = 2 * a;
    Int r = b % m;
    if (r < 0) r += m;
    if (r > a) r -= m;
    return r;
}

} // namespace

bool is_reduced_imag(const QuadIdeal& f, const QuadOrder& order) {
    Int c = form_c(f, order);
    if (!(-f.a < f.b && f.b <= f.a && f.a <= c)) return false;
    if (f.a == c && f.b < 0) return false;
    return true;
}

QuadIdeal reduce_imag(const QuadIdeal& f, const QuadOrder& order) {
    Int a = f.a, b = normalize_b(f.b, f.a);
    while (true) {
        Int c = (b * b - order.disc) / (4 * a);
        if (a > c) {
            Int b2 = normalize_b(-b, c);
            a = c;
            b = b2;
            continue;
        }
        if (a == c && b < 0) b = -b;
        return {a, b};
    }
}

QuadIdeal compose_raw(const QuadIdeal& f1, const QuadIdeal& f2, const QuadOrder& order) {
    // g = gcd(a1, a2, (b1+b2)/2); e1 a1 + e2 a2 + e3 s = g
    Int s = (f1.b + f2.b) / 2;
    auto eg1 = numt::egcd(f1.a, f2.a);
    Int d1 = eg1.g; // = u a1 + v a2
    auto eg2 = numt::egcd(d1, s);
    Int g = eg2.g; // = w d1 + e3 s
    Int e1 = eg2.x * eg1.x;
    Int e2 = eg2.x * eg1.y;
    Int e3 = eg2.y;
    Int big_a = (f1.a / g) * (f2.a / g);
    // B = (e1 a1 b2 + e2 a2 b1 + e3 (b1 b2 + D)/2) / g  (mod 2A)
    Int num = e1 * f1.a * f2.b + e2 * f2.a * f1.b + e3 * (f1.b * f2.b + order.disc) / 2;
    Int big_b = (num / g) % (2 * big_a);
    if (big_b < 0) big_b += 2 * big_a;
    QuadIdeal out{big_a, big_b};
    check_ideal(out, order);
    return out;
}

QuadIdeal compose(const QuadIdeal& f1, const QuadIdeal& f2, const QuadOrder& order) {
    QuadIdeal raw = compose_raw(f1, f2, order);
    if (order.disc < 0) return reduce_imag(raw, order);
    return reduce_real(raw, order).first;
}

QuadIdeal ideal_inverse(const QuadIdeal& f, const QuadOrder& order) {
    QuadIdeal conj{f.a, -f.b};
    if (order.disc < 0) return reduce_imag(conj, order);
    return reduce_real(conj, order).first;
}

QuadIdeal pow_reduced(const QuadIdeal& g, const Int& e, const QuadOrder& order) {
    if (e < 0) return pow_reduced(ideal_inverse(g, order), -e, order);
    QuadIdeal result = order.disc < 0 ? reduce_imag(unit_ideal(order), order)
                                      : unit_ideal(order);
    QuadIdeal base = g;
    Int exp = e;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) result = compose(result, base, order);
        base = compose(base, base, order);
        exp >>= 1;
    }
    return result;
}

std::size_t ClassGroup::index_of(const QuadIdeal& f) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == f) return i;
    throw DomainError("ClassGroup::index_of: not a reduced form");
}

ClassGroup class_group_brute(const QuadOrder& order) {
    if (order.disc >= 0) throw DomainError("class_group_brute: needs disc < 0");
    if (-order.disc > 1000000) throw DomainError("class_group_brute: |disc| > 1e6");
    ClassGroup cg;
    // enumerate reduced primitive forms (a, b, c), b^2 - 4ac = disc
    for (Int a = 1; 3 * a * a <= -order.disc; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - order.disc;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (a > c) continue;
            if (a == c && b < 0) continue;
            Int g = numt::gcd(numt::gcd(a, abs(b)), c);
            if (g != 1) continue;
            cg.elements.push_back({a, b});
        }
    }
    std::sort(cg.elements.begin(), cg.elements.end());
    cg.unit_index = cg.index_of(reduce_imag(unit_ideal(order), order));
    cg.table.assign(cg.h(), std::vector<std::size_t>(cg.h(), 0));
    for (std::size_t i = 0; i < cg.h(); ++i)
        for (std::size_t j = 0; j < cg.h(); ++j)
            cg.table[i][j] = cg.index_of(compose(cg.elements[i], cg.elements[j], order));
    return cg;
}

BwImagExchange bw_imaginary_exchange(const QuadOrder& order, const QuadIdeal& g,
                                     Rng& rng) {
    Int bound = numt::kth_root_floor(abs(order.disc), 2);
    BwImagExchange ex;
    ex.g = g;
    ex.secret_a = numt::uniform_int(rng, 1, bound);
    ex.secret_b = numt::uniform_int(rng, 1, bound);
    ex.ga = pow_reduced(g, ex.secret_a, order);
    ex.gb = pow_reduced(g, ex.secret_b, order);
    ex.shared_alice = pow_reduced(ex.gb, ex.secret_a, order);
    ex.shared_bob = pow_reduced(ex.ga, ex.secret_b, order);
    return ex;
}

// ---------------------------------------------------------------------------
// Real infrastructure

bool is_reduced_real(const QuadIdeal& f, const QuadOrder& order) {
    const Int& d = order.disc;
    if (f.a <= 0 || f.b <= 0) return false;
    if (f.b * f.b >= d) return false; // b < sqrt(D)
    // |sqrt(D) - 2a| < b  <=>  (2a - b)^2 < D and D < (2a + b)^2
    Int lo = 2 * f.a - f.b;
    if (lo > 0 && lo * lo >= d) return false;
    Int hi = 2 * f.a + f.b;
    if (hi * hi <= d) return false;
    return true;
}

long double rho_increment(const QuadIdeal& f, const QuadOrder& order) {
    // Distance gained when a rho step *enters* f: the relative generator of
    // the step (a,b) -> (a',b') is psi = (sqrt(D) - b')/(2a'), giving
    // delta = (1/2) ln |(sqrt(D) + b') / (sqrt(D) - b')|.
    long double sd = order.sqrt_disc;
    long double b = (long double)f.b.get_d();
    return 0.5L * logl(fabsl((sd + b) / (sd - b)));
}

namespace {

// One continued-fraction step (a, b) -> (a', b') with
// q = floor((b + sqrt(D)) / (2a)), b' = 2aq - b, a' = |D - b'^2| / (4a).
QuadIdeal rho_step(const QuadIdeal& f, const QuadOrder& order) {
    Int q = (f.b + order.isqrt_disc);
    mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), Int(2 * f.a).get_mpz_t());
    Int b2 = 2 * f.a * q - f.b;
    Int a2 = abs(order.disc - b2 * b2) / (4 * f.a);
    return {a2, b2};
}

} // namespace

InfraPoint rho(const InfraPoint& p, const QuadOrder& order) {
    InfraPoint out;
    out.ideal = rho_step(p.ideal, order);
    out.dist = p.dist + rho_increment(out.ideal, order);
    return out;
}

InfraPoint rho_inverse(const InfraPoint& p, const QuadOrder& order) {
    // Invert (a,b) -> (a',b'): a_prev = (D - b^2)/(4a'), wait: the forward
    // step satisfies a_prev * a_cur = (D - b_cur^2)/4 with b_prev = -b_cur
    // (mod 2 a_prev) normalized into the reduced window.
    const QuadIdeal& cur = p.ideal;
    Int a_prev = (order.disc - cur.b * cur.b) / (4 * cur.a);
    if (a_prev <= 0) throw DomainError("rho_inverse: point not on a reduced cycle");
    // choose b_prev = -b_cur mod 2 a_prev inside (sqrt(D) - 2 a_prev, sqrt(D))
    Int m = 2 * a_prev;
    Int b_prev = (-cur.b) % m;
    if (b_prev < 0) b_prev += m;
    // shift into (sqrt(D) - 2a, sqrt(D)): the unique residue with
    // sqrt(D) - 2a < b <= sqrt(D); since D nonsquare, b != sqrt(D).
    Int top = order.isqrt_disc;
    // b_prev + k m <= top < b_prev + (k+1) m
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), Int(top - b_prev).get_mpz_t(), m.get_mpz_t());
    b_prev += k * m;
    QuadIdeal prev{a_prev, b_prev};
    InfraPoint out;
    out.ideal = prev;
    out.dist = p.dist - rho_increment(p.ideal, order); // undo the entering step
    return out;
}

std::pair<QuadIdeal, long double> reduce_real(const QuadIdeal& f, const QuadOrder& order) {
    QuadIdeal cur = f;
    long double inc = 0.0L;
    // normalize b first so the walk starts near the reduced window
    if (cur.b <= 0 || cur.b * cur.b >= order.disc || !is_reduced_real(cur, order)) {
        // bring b close to sqrt(D) modulo 2a
        Int m = 2 * cur.a;
        Int b = cur.b % m;
        if (b < 0) b += m;
        Int k;
        mpz_fdiv_q(k.get_mpz_t(), Int(order.isqrt_disc - b).get_mpz_t(), m.get_mpz_t());
        b += k * m;
        cur.b = b;
    }
    int guard = 0;
    while (!is_reduced_real(cur, order)) {
        cur = rho_step(cur, order);
        inc += rho_increment(cur, order);
        if (++guard > 100000) throw DomainError("reduce_real: reduction diverged");
    }
    return {cur, inc};
}

std::size_t RealCycle::index_of(const QuadIdeal& f) const {
    for (std::size_t i = 0; i < ideals.size(); ++i)
        if (ideals[i] == f) return i;
    throw DomainError("RealCycle::index_of: ideal not on the principal cycle");
}

long double RealCycle::distance_of(const QuadIdeal& f) const {
    return dists[index_of(f)];
}

RealCycle build_cycle(const QuadOrder& order) {
    if (order.disc <= 0) throw DomainError("build_cycle: needs disc > 0");
    RealCycle cycle;
    cycle.order = order;
    QuadIdeal unit = unit_ideal(order);
    InfraPoint p{unit, 0.0L};
    cycle.ideals.push_back(unit);
    cycle.dists.push_back(0.0L);
    for (int guard = 0; guard < 10000000; ++guard) {
        p = rho(p, order);
        if (p.ideal == unit) {
            cycle.regulator = p.dist;
            return cycle;
        }
        cycle.ideals.push_back(p.ideal);
        cycle.dists.push_back(p.dist);
    }
    throw DomainError("build_cycle: cycle too long");
}

long double regulator_brute(const QuadOrder& order) {
    return build_cycle(order).regulator;
}

long double regulator_pell(const QuadOrder& order) {
    // Independent oracle: multiply the continued-fraction step generators
    // (b + sqrt(D))/(2a) around the principal cycle exactly as
    // (p + q sqrt(D))/den with bigints, verify the result is a unit of
    // O_D (x^2 - D y^2 = +-4 after normalisation), and return its log.
    const Int& d = order.disc;
    if (d <= 0) throw DomainError("regulator_pell: needs disc > 0");
    QuadIdeal unit = unit_ideal(order);
    QuadIdeal cur = unit;
    Int p = 1, q = 0, den = 1;
    for (int guard = 0; guard < 10000000; ++guard) {
        // multiply by (b + sqrt(D)) / (2a)
        Int np = p * cur.b + q * d;
        Int nq = p + q * cur.b;
        p = np;
        q = nq;
        den *= 2 * cur.a;
        Int g = numt::gcd(numt::gcd(p, q), den);
        if (g > 1) { p /= g; q /= g; den /= g; }
        cur = rho_step(cur, order);
        if (cur == unit) {
            // normalise to the (x + y sqrt(D))/2 form
            Int x = 2 * p, y = 2 * q;
            if (x % den != 0 || y % den != 0)
                throw DomainError("regulator_pell: unit has unexpected denominator");
            x /= den;
            y /= den;
            Int norm = x * x - d * y * y;
            if (norm != 4 && norm != -4)
                throw DomainError("regulator_pell: product is not a unit");
            long double val = ((long double)x.get_d() +
                               (long double)y.get_d() * order.sqrt_disc) / 2.0L;
            return logl(fabsl(val));
        }
    }
    throw DomainError("regulator_pell: cycle did not close");
}

InfraPoint ideal_left(long double x, const RealCycle& cycle) {
    long double r = cycle.regulator;
    long double pos = fmodl(x, r);
    if (pos < 0) pos += r;
    // last index with dists[i] <= pos
    std::size_t lo = 0, hi = cycle.size();
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (cycle.dists[mid] <= pos) lo = mid;
        else hi = mid;
    }
    return {cycle.ideals[lo], cycle.dists[lo]};
}

long double ideal_error(long double x, const RealCycle& cycle) {
    long double r = cycle.regulator;
    long double pos = fmodl(x, r);
    if (pos < 0) pos += r;
    InfraPoint w = ideal_left(x, cycle);
    return pos - w.dist;
}

InfraPoint ideal_left_rel(long double x, const InfraPoint& base, const RealCycle& cycle) {
    return ideal_left(base.dist + x, cycle);
}

long double ideal_error_rel(long double x, const InfraPoint& base, const RealCycle& cycle) {
    return ideal_error(base.dist + x, cycle);
}

InfraPoint infra_advance(const InfraPoint& point, long double x, const QuadOrder& order) {
    if (x < 0) throw DomainError("infra_advance: negative step");
    long double target = point.dist + x;
    InfraPoint cur = point;
    // doubling ladder of advanced points starting from one rho step
    InfraPoint step = rho({unit_ideal(order), 0.0L}, order);
    std::vector<InfraPoint> ladder{step};
    while (ladder.back().dist < x) {
        const InfraPoint& top = ladder.back();
        QuadIdeal raw = compose_raw(top.ideal, top.ideal, order);
        auto [red, inc] = reduce_real(raw, order);
        ladder.push_back({red, 2 * top.dist + inc});
        if (ladder.size() > 128) break;
    }
    for (std::size_t i = ladder.size(); i-- > 0;) {
        while (cur.dist + ladder[i].dist <= target) {
            QuadIdeal raw = compose_raw(cur.ideal, ladder[i].ideal, order);
            auto [red, inc] = reduce_real(raw, order);
            long double nd = cur.dist + ladder[i].dist + inc;
            if (nd > target) break; // reduction overshoots; try a smaller rung
            cur = {red, nd};
        }
    }
    // rho-correct to land exactly on the ideal to the left of target
    int guard = 0;
    while (true) {
        InfraPoint next = rho(cur, order);
        if (next.dist > target) break;
        cur = next;
        if (++guard > 1000000) throw DomainError("infra_advance: forward walk diverged");
    }
    guard = 0;
    while (cur.dist > target) {
        cur = rho_inverse(cur, order);
        if (++guard > 1000000) throw DomainError("infra_advance: backward walk diverged");
    }
    return cur;
}

BwRealExchange bw_real_exchange(const QuadOrder& order, Rng& rng) {
    RealCycle cycle = build_cycle(order);
    BwRealExchange ex;
    Int bound = order.isqrt_disc;
    ex.secret_a = numt::uniform_int(rng, 1, bound);
    ex.secret_b = numt::uniform_int(rng, 1, bound);
    long double a = (long double)ex.secret_a.get_d();
    long double b = (long double)ex.secret_b.get_d();
    InfraPoint pa = ideal_left(a, cycle);
    InfraPoint pb = ideal_left(b, cycle);
    ex.ideal_a = pa.ideal;
    ex.ideal_b = pb.ideal;
    ex.error_a = ideal_error(a, cycle);
    ex.error_b = ideal_error(b, cycle);
    // Alice: ideal to the left of a + e(b), relative to b's ideal.
    InfraPoint ca = ideal_left_rel(a + ex.error_b, pb, cycle);
    InfraPoint cb = ideal_left_rel(b + ex.error_a, pa, cycle);
    ex.candidate_alice = ca.ideal;
    ex.candidate_bob = cb.ideal;
    ex.pre_cleanup_mismatch = !(ca.ideal == cb.ideal);
    if (!ex.pre_cleanup_mismatch) {
        ex.shared = ca.ideal;
        return ex;
    }
    // Cleanup: both parties list the neighbourhoods within 3 rho steps of
    // both candidates and adopt the common ideal with the fewest total
    // steps, ties broken lexicographically. Both can compute this from the
    // exchanged candidates alone.
    auto neighbourhood = [&](const QuadIdeal& start) {
        std::vector<std::pair<QuadIdeal, int>> out;
        InfraPoint fwd{start, 0.0L}, bwd{start, 0.0L};
        out.push_back({start, 0});
        for (int s = 1; s <= 3; ++s) {
            fwd = rho(fwd, order);
            bwd = rho_inverse(bwd, order);
            out.push_back({fwd.ideal, s});
            out.push_back({bwd.ideal, s});
        }
        return out;
    };
    auto na = neighbourhood(ca.ideal);
    auto nb = neighbourhood(cb.ideal);
    int best_steps = 1 << 20;
    QuadIdeal best{0, 0};
    bool found = false;
    for (const auto& [ia, sa] : na)
        for (const auto& [ib, sb] : nb) {
            if (!(ia == ib)) continue;
            int steps = sa + sb;
            if (steps < best_steps ||
                (steps == best_steps && ia < best)) {
                best_steps = steps;
                best = ia;
                found = true;
            }
        }
    if (!found) throw AlgorithmFailure("bw_real_exchange: cleanup failed");
    ex.shared = best;
    return ex;
}

std::string ideal_to_json(const QuadIdeal& ideal) {
    std::ostringstream os;
    os << "{\"a\":\"" << ideal.a.get_str() << "\",\"b\":\"" << ideal.b.get_str()
       << "\"}";
    return os.str();
}

} // namespace qcw::quad
