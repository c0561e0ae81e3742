#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "affinehsp/finite_field.hpp"

namespace affinehsp {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs the invariant suites (group lemmas, Gauss sums, the F_M theorem, the
/// recovery chain, the phase subroutine) against one field. Exhaustive;
/// requires q <= 16.
std::vector<CheckResult> run_verification(const Field& f, std::uint64_t seed);

}  // namespace affinehsp
