#pragma once

#include "json.hpp"

namespace omec::cli {

struct ValidateOptions {
    // Scales the zero-temperature closed form by (1 + perturb) before comparing;
    // a nonzero value must make the grid check fail.
    double perturb_closed = 0.0;
};

// Runs every oracle check. Report: {"passed": bool, "checks": [...]}.
nlohmann::json run_validation(const ValidateOptions& opt);

}  // namespace omec::cli
