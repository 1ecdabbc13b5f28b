#pragma once

#include <stdexcept>
#include <string>

namespace qcw {

// Precondition violations and invalid arguments.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// h is not in the subgroup generated by g.
struct NotInSubgroup : std::runtime_error {
    explicit NotInSubgroup(const std::string& what) : std::runtime_error(what) {}
};

// Quadratic non-residue where a residue was required.
struct NotAResidue : std::runtime_error {
    explicit NotAResidue(const std::string& what) : std::runtime_error(what) {}
};

// Rabin decryption could not single out a root by redundancy.
struct AmbiguousDecryption : std::runtime_error {
    explicit AmbiguousDecryption(const std::string& what) : std::runtime_error(what) {}
};

// Syndrome decoder met an error pattern outside its table.
struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Attack ran out of its iteration budget.
struct AttackBudgetExceeded : std::runtime_error {
    explicit AttackBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Attack terminated without a candidate.
struct AttackFailed : std::runtime_error {
    explicit AttackFailed(const std::string& what) : std::runtime_error(what) {}
};

// Linearly dependent rows / singular matrix.
struct RankError : std::runtime_error {
    explicit RankError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration bound certified insufficient.
struct BoundError : std::runtime_error {
    explicit BoundError(const std::string& what) : std::runtime_error(what) {}
};

// Quantum sampling budget exhausted or post-processing failed.
struct AlgorithmFailure : std::runtime_error {
    explicit AlgorithmFailure(const std::string& what) : std::runtime_error(what) {}
};

// Decrypted value failed a structural check (tampered ciphertext).
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qcw
