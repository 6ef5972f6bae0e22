// Standalone acceptance runner: one pass/fail line per criterion, nonzero
// exit when any criterion fails.

#include <iostream>

#include "urel/acceptance.hpp"

int main() {
    const auto results = urel::accept::run_all(std::cout);
    const bool ok = urel::accept::summarize(results, std::cout);
    return ok ? 0 : 2;
}
