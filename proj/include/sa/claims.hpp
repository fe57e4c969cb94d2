#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sa {

struct ClaimResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

struct Claim {
    int id;
    std::string title;
    double limit_seconds;
    // Returns whether the claim holds and appends a short report to `detail`.
    std::function<bool(std::string& detail)> check;
};

// The acceptance matrix, criteria 1 to 10 in order.
const std::vector<Claim>& paper_claims();

// Runs one claim; exceptions count as failures and exceeding the time limit fails the claim.
ClaimResult run_claim(const Claim& claim);
std::vector<ClaimResult> run_paper_suite();

// One "PASS|FAIL <id> <title> (<seconds>s): <detail>" line per result.
std::string render_claim_line(const ClaimResult& r);

} // namespace sa
