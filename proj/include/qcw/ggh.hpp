#pragma once

#include <optional>

#include "qcw/lattice.hpp"
#include "qcw/rng.hpp"

namespace qcw::ggh {

using lattice::IntBasis;
using lattice::IntVec;
using numt::Int;

struct GghKeyPair {
    IntBasis pub;  // high orthogonality defect
    Int sigma;
    IntBasis priv; // low orthogonality defect, same lattice
};

// priv = k*I + noise (noise in [-4, 4]), pub = U * priv for a random product
// of elementary unimodular row operations; resampled until
// defect(priv) <= defect(pub). diag = 0 picks k = 4 round(sqrt(dim)) max(1, sigma),
// which keeps the legitimate decryption failure rate under 1%; the attack
// harnesses pass a fixed diag to stress the CVP instances instead.
GghKeyPair ggh_keygen(std::size_t dim, Rng& rng, const Int& sigma = 1,
                      const Int& diag = 0);

// c = m B + e with e_i = +-sigma equiprobably.
IntVec ggh_encrypt(const IntBasis& pub, const Int& sigma, const IntVec& m, Rng& rng);

// Babai-round against the private basis, re-express in the public one, and
// verify the re-encryption error is exactly +-sigma per coordinate; nullopt
// signals a detected decryption failure.
std::optional<IntVec> ggh_decrypt(const GghKeyPair& key, const IntVec& c);

// LLL-reduce the public basis, then Babai round / nearest-plane.
IntVec attack_round(const IntBasis& pub, const IntVec& c);
IntVec attack_nearest_plane(const IntBasis& pub, const IntVec& c);

// Embedding attack: scan the reduced embedded basis for a (+-e || +-1) row
// with all |e_i| = sigma. Throws AttackFailed when no row qualifies.
IntVec attack_embed(const IntBasis& pub, const Int& sigma, const IntVec& c);

struct NguyenResult {
    IntVec m_mod;          // the recovered m mod 2*sigma (verified exact)
    std::optional<IntVec> message; // full plaintext when the finish succeeds
};

// Nguyen partial-information attack: solve m B = c + s (mod 2 sigma), then
// finish the simplified CVP instance through the embedding attack.
NguyenResult attack_nguyen(const IntBasis& pub, const Int& sigma, const IntVec& c);

} // namespace qcw::ggh
