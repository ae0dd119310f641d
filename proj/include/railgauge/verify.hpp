#pragma once

#include <string>
#include <vector>

namespace railgauge {

/// One self-check: a recomputed quantity against an independently known
/// target (closed forms, hand-expanded coefficients, cross-implementation
/// agreement). `scope` groups checks by the module they exercise.
struct VerifyCheck {
    std::string scope;
    std::string name;
    std::string expected;
    std::string got;
    bool pass = false;
};

struct VerifyOptions {
    /// "all" or one of: unitaries, fock, measurement, analytic, coherent,
    /// golden.
    std::string scope = "all";
    /// Adds the slower 9- and 10-mode Fourier cross-checks.
    bool extended = false;
};

struct VerifySummary {
    std::vector<VerifyCheck> checks;
    int failed = 0;

    bool all_pass() const { return failed == 0; }
};

VerifySummary run_verification(const VerifyOptions& opts = {});

} // namespace railgauge
