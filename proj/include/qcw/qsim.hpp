#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qcw/errors.hpp"
#include "qcw/rng.hpp"

namespace qcw::qsim {

using Complex = std::complex<double>;

inline constexpr double kAmpTolerance = 1e-9;
// Dense register product cap; larger simulations must use fourier sampling.
inline constexpr std::size_t kMaxAmplitudes = std::size_t(1) << 22;

// Unit-norm amplitude vector over a composite register. Register 0 is the
// most significant: index = sum_i x_i * prod_{j>i} dims[j].
struct Statevector {
    std::vector<std::size_t> dims;
    std::vector<Complex> amp;

    std::size_t size() const { return amp.size(); }
    std::size_t stride(std::size_t reg) const;
    std::size_t digit(std::size_t index, std::size_t reg) const;
};

// |values[0]>|values[1]>...
Statevector basis_state(const std::vector<std::size_t>& dims,
                        const std::vector<std::size_t>& values);

double norm_sq(const Statevector& s);

// Equality up to a global unit scalar (global phase never affects outcomes).
bool equal_up_to_phase(const Statevector& a, const Statevector& b,
                       double tol = kAmpTolerance);

struct Gate2x2 {
    Complex u00, u01, u10, u11;
};

bool is_unitary(const Gate2x2& g, double tol = kAmpTolerance);

Gate2x2 gate_not();
Gate2x2 gate_h();
Gate2x2 gate_phase(double theta);

Statevector apply_single(const Statevector& s, const Gate2x2& g, std::size_t reg);

Statevector apply_controlled(const Statevector& s, const Gate2x2& g,
                             std::size_t control, std::size_t target);

enum class Direction { forward, inverse };

// Dense QFT_m on one register of any size m >= 2:
// forward maps |a> -> (1/sqrt(m)) sum_x e^{2 pi i x a / m} |x>.
Statevector qft(const Statevector& s, std::size_t reg, Direction dir);

// The H / controlled-phase circuit realisation for a power-of-two register
// expressed as size-2 registers, big-endian across `qubits`. Agrees with the
// dense qft on the corresponding register within kAmpTolerance.
Statevector qft_pow2_circuit(const Statevector& s,
                             const std::vector<std::size_t>& qubits,
                             Direction dir);

// U_f : |x>|y> -> |x>|y xor f(x)>. Out register size must be a power of two.
Statevector apply_oracle(const Statevector& s,
                         const std::function<std::size_t(std::size_t)>& f,
                         std::size_t in_reg, std::size_t out_reg);

// Born-rule measurement of one register; returns the outcome and the
// renormalised collapsed state.
std::pair<std::size_t, Statevector> measure(const Statevector& s,
                                            std::size_t reg, Rng& rng);

// One weighted support point of a sparse state.
struct SupportPoint {
    std::uint64_t index;
    Complex amplitude;
};

// Exact outcome distribution of "apply QFT_m (or its inverse) then measure"
// for a sparse state, without materialising the register. O(m * support).
std::vector<double> fourier_sample(const std::vector<SupportPoint>& support,
                                   std::uint64_t m,
                                   Direction dir = Direction::forward);

// Draw one outcome from the fourier_sample distribution by rejection;
// exact, O(support) per proposal, ~O(support) proposals expected.
std::uint64_t fourier_sample_draw(const std::vector<SupportPoint>& support,
                                  std::uint64_t m, Rng& rng,
                                  Direction dir = Direction::forward);

// Closed-form draw for a uniform arithmetic-progression support
// {offset + j*step : 0 <= j < count}; the workhorse of period finding.
std::uint64_t fourier_sample_draw_ap(std::uint64_t offset, std::uint64_t step,
                                     std::uint64_t count, std::uint64_t m,
                                     Rng& rng);

} // namespace qcw::qsim
