#pragma once

#include "sdl/dimensions.hpp"

#include <string>
#include <vector>

namespace sdl {

struct ClaimRow {
    std::string claim;
    std::string expected;
    std::string computed;
    bool pass = false;
    bool budget = false;  // computed from proven bounds after a budget stop
    double seconds = 0;
};

struct SuiteResult {
    std::string suite;
    std::vector<ClaimRow> rows;
    bool all_pass() const;
    bool any_budget() const;
    std::string table(bool with_timing) const;
};

/// "core" (desk scale, seconds) and "long" (perm_thresholds(3), embed_2d(2); minutes).
const std::vector<std::string>& suite_names();

/// Throws ArgumentError for an unknown suite name.
SuiteResult reproduce(const std::string& suite, EngineOptions options = {}, SearchBudget budget = {});

}  // namespace sdl
