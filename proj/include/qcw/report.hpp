#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcw/rng.hpp"

namespace qcw::report {

struct TrialRecord {
    std::uint64_t index = 0;
    bool success = false;
    // deterministic free-form payload (JSON snippet or plain text)
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    std::map<std::string, std::string> parameters; // sorted, deterministic
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double wall_time_ms = 0.0; // excluded from byte-identity comparisons
    std::vector<TrialRecord> records;

    double success_rate() const;
    // 95% normal-approximation binomial interval, clamped to [0, 1]
    std::pair<double, double> confidence_interval() const;
    std::string to_json() const;
    std::string to_table() const;
};

// Runs `trials` independent trials, each on its own counter-derived RNG
// stream, up to `jobs` at a time; records keep trial order.
ExperimentReport run_trials(
    const std::string& name, std::map<std::string, std::string> parameters,
    std::uint64_t seed, std::uint64_t trials, unsigned jobs,
    const std::function<TrialRecord(std::uint64_t, Rng&)>& body);

void write_file(const std::string& path, const std::string& contents);

} // namespace qcw::report
