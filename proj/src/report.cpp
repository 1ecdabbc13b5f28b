#include "qcw/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "qcw/errors.hpp"

namespace qcw::report {

double ExperimentReport::success_rate() const {
    return trials == 0 ? 0.0 : double(successes) / double(trials);
}

std::pair<double, double> ExperimentReport::confidence_interval() const {
    if (trials == 0) return {0.0, 0.0};
    double p = success_rate();
    double half = 1.96 * std::sqrt(p * (1.0 - p) / double(trials));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

namespace {

std::string json_escape(const std::string& s) {
    std::ostringstream os;
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    return os.str();
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// `detail` holds either a JSON snippet (object/array/number) or plain text.
bool looks_like_json(const std::string& s) {
    return !s.empty() && (s.front() == '{' || s.front() == '[' ||
                          (s.front() >= '0' && s.front() <= '9'));
}

} // namespace

std::string ExperimentReport::to_json() const {
    std::ostringstream os;
    os << "{\"schema\":1,\"name\":\"" << json_escape(name) << "\",\"parameters\":{";
    bool first = true;
    for (const auto& [k, v] : parameters) {
        os << (first ? "" : ",") << "\"" << json_escape(k) << "\":\""
           << json_escape(v) << "\"";
        first = false;
    }
    auto [lo, hi] = confidence_interval();
    os << "},\"seed\":" << seed << ",\"trials\":" << trials
       << ",\"successes\":" << successes
       << ",\"success_rate\":" << fmt_double(success_rate())
       << ",\"confidence_interval\":[" << fmt_double(lo) << "," << fmt_double(hi)
       << "],\"wall_time_ms\":" << fmt_double(wall_time_ms) << ",\"records\":[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const TrialRecord& r = records[i];
        os << (i ? "," : "") << "{\"trial\":" << r.index
           << ",\"success\":" << (r.success ? "true" : "false") << ",\"detail\":";
        if (looks_like_json(r.detail))
            os << r.detail;
        else
            os << "\"" << json_escape(r.detail) << "\"";
        os << "}";
    }
    os << "]}";
    return os.str();
}

std::string ExperimentReport::to_table() const {
    std::ostringstream os;
    os << "experiment: " << name << "\n";
    for (const auto& [k, v] : parameters) os << "  " << k << " = " << v << "\n";
    auto [lo, hi] = confidence_interval();
    os << "  seed      = " << seed << "\n"
       << "  trials    = " << trials << "\n"
       << "  successes = " << successes << "  (rate " << fmt_double(success_rate())
       << ", 95% CI [" << fmt_double(lo) << ", " << fmt_double(hi) << "])\n"
       << "  wall time = " << fmt_double(wall_time_ms) << " ms\n";
    return os.str();
}

ExperimentReport run_trials(
    const std::string& name, std::map<std::string, std::string> parameters,
    std::uint64_t seed, std::uint64_t trials, unsigned jobs,
    const std::function<TrialRecord(std::uint64_t, Rng&)>& body) {
    auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.name = name;
    report.parameters = std::move(parameters);
    report.parameters.emplace("rng", "counter-derived splitmix64 streams");
    report.seed = seed;
    report.trials = trials;
    report.records.assign(trials, {});
    if (jobs < 1) jobs = 1;

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= trials) break;
            Rng rng = trial_rng(seed, i);
            TrialRecord rec = body(i, rng);
            rec.index = i;
            report.records[i] = std::move(rec);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& r : report.records)
        if (r.success) ++report.successes;
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
    return report;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("write_file: cannot open " + path);
    out << contents << "\n";
}

} // namespace qcw::report
