// Named verification suites exercising the explicit statements of the
// theory on a built tilting table.  Shared by the command-line driver and
// the acceptance battery.

#pragma once

#include <string>
#include <vector>

#include "sl2.hpp"

namespace tilt {

struct SuiteResult {
    std::string name;
    bool pass = true;
    int checks = 0;
    std::vector<std::string> failures; // human-readable diagnostics
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

// Suites: omega, support, fusion9, carlson, loewy2, uniserial, tensorpowers,
// selfext, cyclic, consequences.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const TiltingTable& table);

std::string suite_result_json(const SuiteResult& r);

} // namespace tilt
