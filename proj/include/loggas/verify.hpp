#ifndef LOGGAS_VERIFY_HPP
#define LOGGAS_VERIFY_HPP

#include <string>
#include <vector>

namespace loggas {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // first counterexample / summary statistic
};

// Property suites: "kernels", "energy", "equilibrium", "ldp", or "all".
// Deterministic (fixed internal seeds). Throws on unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace loggas

#endif
