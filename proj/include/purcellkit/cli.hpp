#pragma once

#include <string>
#include <vector>

// Command-line front end binding the modules into the analysis pipeline.
// Exit statuses: 0 success, 1 check/fit/solver failure, 2 usage or parse
// error. PURCELLKIT_LOG=info|debug enables progress notes on stderr.

namespace purcellkit::cli {

struct CheckRow {
    std::string name;
    std::string computed;  // preformatted so reports compare byte-identically
    std::string target;
    bool pass = false;
};

// The model-consistency check table behind the `reproduce` subcommand:
// every quantitative claim, computed at desk scale with its tolerance.
// xi_zpl overrides the branching ratio used by the lifetime-extraction rows.
std::vector<CheckRow> reproduce_checks(double xi_zpl = 0.03);

std::string format_check_table(const std::vector<CheckRow>& rows);

int run(int argc, const char* const* argv);

}  // namespace purcellkit::cli
