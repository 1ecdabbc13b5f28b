#include "qcw/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qcw::qsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t checked_total(const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw DomainError("statevector: no registers");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d < 2) throw DomainError("statevector: register size < 2");
        if (total > kMaxAmplitudes / d)
            throw DomainError("statevector: register product exceeds dense cap");
        total *= d;
    }
    return total;
}

void check_reg(const Statevector& s, std::size_t reg) {
    if (reg >= s.dims.size()) throw DomainError("register index out of range");
}

void check_qubit(const Statevector& s, std::size_t reg) {
    check_reg(s, reg);
    if (s.dims[reg] != 2) throw DomainError("register is not a qubit");
}

} // namespace

std::size_t Statevector::stride(std::size_t reg) const {
    std::size_t st = 1;
    for (std::size_t j = reg + 1; j < dims.size(); ++j) st *= dims[j];
    return st;
}

std::size_t Statevector::digit(std::size_t index, std::size_t reg) const {
    return (index / stride(reg)) % dims[reg];
}

Statevector basis_state(const std::vector<std::size_t>& dims,
                        const std::vector<std::size_t>& values) {
    std::size_t total = checked_total(dims);
    if (values.size() != dims.size()) throw DomainError("basis_state: arity mismatch");
    Statevector s;
    s.dims = dims;
    s.amp.assign(total, Complex(0.0, 0.0));
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (values[i] >= dims[i]) throw DomainError("basis_state: value out of range");
        idx = idx * dims[i] + values[i];
    }
    s.amp[idx] = 1.0;
    return s;
}

double norm_sq(const Statevector& s) {
    double n = 0.0;
    for (const Complex& a : s.amp) n += std::norm(a);
    return n;
}

bool equal_up_to_phase(const Statevector& a, const Statevector& b, double tol) {
    if (a.dims != b.dims) return false;
    // Align on the largest amplitude of a.
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        if (std::norm(a.amp[i]) > best) { best = std::norm(a.amp[i]); imax = i; }
    if (std::abs(b.amp[imax]) < tol && std::abs(a.amp[imax]) < tol) return true;
    if (std::abs(b.amp[imax]) == 0.0) return false;
    Complex phase = a.amp[imax] / b.amp[imax];
    double mag = std::abs(phase);
    if (std::abs(mag - 1.0) > tol) return false;
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        if (std::abs(a.amp[i] - phase * b.amp[i]) > tol) return false;
    return true;
}

bool is_unitary(const Gate2x2& g, double tol) {
    // U^dagger U = I entrywise.
    Complex a = std::conj(g.u00) * g.u00 + std::conj(g.u10) * g.u10;
    Complex b = std::conj(g.u00) * g.u01 + std::conj(g.u10) * g.u11;
    Complex c = std::conj(g.u01) * g.u00 + std::conj(g.u11) * g.u10;
    Complex d = std::conj(g.u01) * g.u01 + std::conj(g.u11) * g.u11;
    return std::abs(a - 1.0) <= tol && std::abs(b) <= tol &&
           std::abs(c) <= tol && std::abs(d - 1.0) <= tol;
}

Gate2x2 gate_not() { return {0.0, 1.0, 1.0, 0.0}; }

Gate2x2 gate_h() {
    double r = 1.0 / std::sqrt(2.0);
    return {r, r, r, -r};
}

Gate2x2 gate_phase(double theta) {
    return {1.0, 0.0, 0.0, std::polar(1.0, theta)};
}

Statevector apply_single(const Statevector& s, const Gate2x2& g, std::size_t reg) {
    check_qubit(s, reg);
    Statevector out = s;
    std::size_t st = s.stride(reg);
    std::size_t block = st * 2;
    for (std::size_t base = 0; base < s.amp.size(); base += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            std::size_t i0 = base + inner;
            std::size_t i1 = i0 + st;
            Complex a0 = s.amp[i0], a1 = s.amp[i1];
            out.amp[i0] = g.u00 * a0 + g.u01 * a1;
            out.amp[i1] = g.u10 * a0 + g.u11 * a1;
        }
    }
    return out;
}

Statevector apply_controlled(const Statevector& s, const Gate2x2& g,
                             std::size_t control, std::size_t target) {
    check_qubit(s, control);
    check_qubit(s, target);
    if (control == target) throw DomainError("controlled gate: control == target");
    Statevector out = s;
    std::size_t stc = s.stride(control);
    std::size_t stt = s.stride(target);
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        if ((i / stc) % 2 != 1) continue;        // control off
        if ((i / stt) % 2 != 0) continue;        // visit each pair once
        std::size_t j = i + stt;
        Complex a0 = out.amp[i], a1 = out.amp[j];
        out.amp[i] = g.u00 * a0 + g.u01 * a1;
        out.amp[j] = g.u10 * a0 + g.u11 * a1;
    }
    return out;
}

Statevector qft(const Statevector& s, std::size_t reg, Direction dir) {
    check_reg(s, reg);
    std::size_t m = s.dims[reg];
    std::size_t st = s.stride(reg);
    std::size_t block = st * m;
    double sign = dir == Direction::forward ? 1.0 : -1.0;
    double root = 1.0 / std::sqrt(double(m));
    // Precompute the m-th roots of unity once.
    std::vector<Complex> w(m);
    for (std::size_t k = 0; k < m; ++k)
        w[k] = std::polar(1.0, sign * 2.0 * kPi * double(k) / double(m));
    Statevector out = s;
    std::vector<Complex> col(m), res(m);
    for (std::size_t base = 0; base < s.amp.size(); base += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            for (std::size_t a = 0; a < m; ++a) col[a] = s.amp[base + a * st + inner];
            for (std::size_t x = 0; x < m; ++x) {
                Complex acc(0.0, 0.0);
                for (std::size_t a = 0; a < m; ++a) acc += w[(x * a) % m] * col[a];
                res[x] = acc * root;
            }
            for (std::size_t x = 0; x < m; ++x) out.amp[base + x * st + inner] = res[x];
        }
    }
    return out;
}

namespace {

// Exchange the contents of two same-size registers by permuting indices.
Statevector swap_registers(const Statevector& s, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return s;
    Statevector out = s;
    std::size_t st1 = s.stride(r1), st2 = s.stride(r2);
    std::size_t d = s.dims[r1];
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        std::size_t x1 = (i / st1) % d;
        std::size_t x2 = (i / st2) % d;
        std::size_t j = i + (x2 - x1) * st1 + (x1 - x2) * st2;
        out.amp[j] = s.amp[i];
    }
    return out;
}

} // namespace

Statevector qft_pow2_circuit(const Statevector& s,
                             const std::vector<std::size_t>& qubits,
                             Direction dir) {
    for (std::size_t q : qubits) check_qubit(s, q);
    std::size_t n = qubits.size();
    if (n == 0) throw DomainError("qft circuit: no qubits");
    Statevector cur = s;
    if (dir == Direction::inverse) {
        // Fourier basis -> computational basis, then bit reversal.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double theta = -kPi / double(std::size_t(1) << (i - j));
                cur = apply_controlled(cur, gate_phase(theta), qubits[j], qubits[i]);
            }
            cur = apply_single(cur, gate_h(), qubits[i]);
        }
        for (std::size_t i = 0; i < n / 2; ++i)
            cur = swap_registers(cur, qubits[i], qubits[n - 1 - i]);
    } else {
        for (std::size_t i = 0; i < n / 2; ++i)
            cur = swap_registers(cur, qubits[i], qubits[n - 1 - i]);
        for (std::size_t ii = n; ii-- > 0;) {
            cur = apply_single(cur, gate_h(), qubits[ii]);
            for (std::size_t j = 0; j < ii; ++j) {
                double theta = kPi / double(std::size_t(1) << (ii - j));
                cur = apply_controlled(cur, gate_phase(theta), qubits[j], qubits[ii]);
            }
        }
    }
    return cur;
}

Statevector apply_oracle(const Statevector& s,
                         const std::function<std::size_t(std::size_t)>& f,
                         std::size_t in_reg, std::size_t out_reg) {
    check_reg(s, in_reg);
    check_reg(s, out_reg);
    std::size_t dout = s.dims[out_reg];
    if ((dout & (dout - 1)) != 0)
        throw DomainError("apply_oracle: out register size not a power of two");
    std::size_t din = s.dims[in_reg];
    std::vector<std::size_t> fx(din);
    for (std::size_t x = 0; x < din; ++x) {
        fx[x] = f(x);
        if (fx[x] >= dout) throw DomainError("apply_oracle: f(x) out of range");
    }
    Statevector out = s;
    std::size_t sti = s.stride(in_reg), sto = s.stride(out_reg);
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        std::size_t x = (i / sti) % din;
        std::size_t y = (i / sto) % dout;
        std::size_t y2 = y ^ fx[x];
        out.amp[i - y * sto + y2 * sto] = s.amp[i];
    }
    return out;
}

std::pair<std::size_t, Statevector> measure(const Statevector& s,
                                            std::size_t reg, Rng& rng) {
    check_reg(s, reg);
    std::size_t d = s.dims[reg];
    std::size_t st = s.stride(reg);
    std::vector<double> marginal(d, 0.0);
    for (std::size_t i = 0; i < s.amp.size(); ++i)
        marginal[(i / st) % d] += std::norm(s.amp[i]);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double target = u(rng);
    double acc = 0.0;
    std::size_t outcome = d;
    for (std::size_t v = 0; v < d; ++v) {
        acc += marginal[v];
        if (target < acc) { outcome = v; break; }
    }
    if (outcome == d) { // rounding pushed the target past the cumulative sum
        outcome = std::size_t(std::max_element(marginal.begin(), marginal.end()) -
                              marginal.begin());
    }
    Statevector out = s;
    double scale = 1.0 / std::sqrt(marginal[outcome]);
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        if ((i / st) % d == outcome)
            out.amp[i] = s.amp[i] * scale;
        else
            out.amp[i] = 0.0;
    }
    return {outcome, out};
}

std::vector<double> fourier_sample(const std::vector<SupportPoint>& support,
                                   std::uint64_t m, Direction dir) {
    double total = 0.0;
    for (const auto& p : support) total += std::norm(p.amplitude);
    if (std::abs(total - 1.0) > kAmpTolerance)
        throw DomainError("fourier_sample: support not normalised");
    double sign = dir == Direction::forward ? 1.0 : -1.0;
    std::vector<double> probs(m, 0.0);
    double root = 1.0 / std::sqrt(double(m));
    for (std::uint64_t y = 0; y < m; ++y) {
        Complex acc(0.0, 0.0);
        for (const auto& p : support) {
            std::uint64_t phase_num = (std::uint64_t)((__uint128_t(y) * p.index) % m);
            acc += p.amplitude * std::polar(1.0, sign * 2.0 * kPi * double(phase_num) / double(m));
        }
        probs[y] = std::norm(acc * root);
    }
    return probs;
}

std::uint64_t fourier_sample_draw(const std::vector<SupportPoint>& support,
                                  std::uint64_t m, Rng& rng, Direction dir) {
    double total = 0.0;
    for (const auto& p : support) total += std::norm(p.amplitude);
    if (std::abs(total - 1.0) > kAmpTolerance)
        throw DomainError("fourier_sample_draw: support not normalised");
    double sign = dir == Direction::forward ? 1.0 : -1.0;
    // P(y) <= (sum |alpha|)^2 / m <= support.size() / m by Cauchy-Schwarz.
    double bound = double(support.size()) / double(m);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        std::uint64_t y = uniform_u64(rng, m);
        Complex acc(0.0, 0.0);
        for (const auto& p : support) {
            std::uint64_t phase_num = (std::uint64_t)((__uint128_t(y) * p.index) % m);
            acc += p.amplitude * std::polar(1.0, sign * 2.0 * kPi * double(phase_num) / double(m));
        }
        double py = std::norm(acc) / double(m);
        if (u(rng) * bound <= py) return y;
    }
}

std::uint64_t fourier_sample_draw_ap(std::uint64_t offset, std::uint64_t step,
                                     std::uint64_t count, std::uint64_t m,
                                     Rng& rng) {
    if (count == 0 || step == 0) throw DomainError("fourier_sample_draw_ap: empty support");
    (void)offset; // a coset shift never changes the outcome distribution
    std::uint64_t g = std::gcd(step, m);
    if (count == m / g) {
        // Perfectly periodic support: the outcome is exactly uniform over
        // the g multiples of m/g.
        return (m / g) * uniform_u64(rng, g);
    }
    // P(y) = sin^2(pi u count / m) / (count m sin^2(pi u / m)), u = y*step mod m.
    double bound = double(count) / double(m);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (true) {
        std::uint64_t y = uniform_u64(rng, m);
        std::uint64_t u = (std::uint64_t)((__uint128_t(y) * step) % m);
        double py;
        if (u == 0) {
            py = double(count) / double(m);
        } else {
            std::uint64_t w = (std::uint64_t)((__uint128_t(u) * count) % m);
            double s_num = std::sin(kPi * double(w) / double(m));
            double s_den = std::sin(kPi * double(u) / double(m));
            py = (s_num * s_num) / (double(count) * double(m) * s_den * s_den);
        }
        if (unif(rng) * bound <= py) return y;
    }
}

} // namespace qcw::qsim
