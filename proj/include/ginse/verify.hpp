#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ginse {

struct VerifyResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

// suites: sops | kernels | ode | asymptotics | appendix | mc | all
VerifyReport verify_suite(const std::string& suite, bool quick);

// machine-readable: one "PASS|FAIL name measured threshold # note" line per check
void write_report(std::ostream& os, const VerifyReport& rep);

}  // namespace ginse
