#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Named self-checks behind the `verify` CLI subcommand.  Each check reports
// a measured value, its expected value and the tolerance that was applied.

namespace relgas::verify {

enum class Status { Pass, Fail, Warn };

struct ReportRow {
    std::string check_name;
    Status status;
    double measured;
    double expected;
    double tolerance;
};

// Known suite names: bessel, kinematics, moments, fluctuations, thermo, all.
// Throws std::invalid_argument for anything else.
std::vector<ReportRow> run_suite(const std::string& suite, std::uint64_t seed);

bool all_passed(const std::vector<ReportRow>& rows);

std::string format_report(const std::vector<ReportRow>& rows);

}  // namespace relgas::verify
