#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace connexion {

struct VerifyOptions {
    int relation_bound = 16;
    int samples = 12;
    std::uint64_t seed = 20240601;
    double tol = 1e-9;
    // Mutation switch: flip the sign of residues taken at infinity.
    bool inject_infinity_sign_flip = false;
};

struct Violation {
    std::string invariant;
    std::string instance;
    std::string detail;
};

struct VerifyReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    int checks = 0;
    bool passed() const { return violations.empty(); }
    // {"suite": ..., "passed": ..., "violations": [...], "warnings": [...]}
    std::string to_json() const;
};

// Invariant suites of every module on the bundled instances.
VerifyReport run_verify_suite(VerifyOptions const& opts);

} // namespace connexion
