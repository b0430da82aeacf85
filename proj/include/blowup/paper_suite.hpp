#pragma once

// One summary row per acceptance criterion: the worked examples, the ODE
// asymptotics, the exponent ledger, the Cauchy-data sweep and the property
// suites.

#include <cstdint>
#include <string>
#include <vector>

#include "blowup/json_io.hpp"

namespace blowup {

enum class RowStatus { Pass, Fail, DiscrepancyDocumented };

const char* to_string(RowStatus s);

struct SuiteRow {
    int criterion = 0;
    std::string name;
    RowStatus status = RowStatus::Fail;
    std::string detail;
    Json metrics;
    double seconds = 0.0;
    double limit_seconds = 0.0;

    /// Pass, or a known and reported disagreement with the published values.
    bool ok() const { return status != RowStatus::Fail; }
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<SuiteRow> rows;
    bool all_ok() const;
};

/// Runs a single criterion (1..10). Exceptions become failing rows.
SuiteRow run_criterion(int criterion, std::uint64_t seed);

/// Runs the listed criteria (all ten when empty).
SuiteReport paper_suite(std::uint64_t seed, const std::vector<int>& criteria = {});

/// Timings are left out unless requested so that reports are byte-identical
/// across runs.
Json to_json(const SuiteReport& r, bool include_timings = false);
Table to_table(const SuiteReport& r, bool include_timings = false);

}  // namespace blowup
