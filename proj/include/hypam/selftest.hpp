#pragma once

#include <string>
#include <vector>

namespace hypam {

struct SelftestResult {
    std::string name;
    bool pass;
};

/// Quick example-triple checks per module, used by the CLI --selftest flag.
/// Module keys: core, hyperbolic, lines, curves, surfaces, tropical.
std::vector<SelftestResult> run_selftests(const std::string& module);

} // namespace hypam
