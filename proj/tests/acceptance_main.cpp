// Acceptance driver: runs every criterion, prints one PASS/FAIL line each,
// exits 0 only when all pass.
#include <iostream>

#include "treeldp/acceptance.hpp"

int main() {
    auto results = treeldp::run_acceptance_suite(std::cout);
    return treeldp::all_passed(results) ? 0 : 4;
}
