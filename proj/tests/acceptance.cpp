#include <iostream>

#include "sa/claims.hpp"

int main() {
    bool all = true;
    for (const auto& r : sa::run_paper_suite()) {
        std::cout << sa::render_claim_line(r) << "\n";
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
