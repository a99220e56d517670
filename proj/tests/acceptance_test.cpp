// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <iostream>

#include "jacsplit/acceptance.hpp"

int main() {
    const auto results = jacsplit::acceptance::run_all(jacsplit::CountConfig::from_env());
    int failed = 0;
    for (const auto& r : results) {
        std::cout << jacsplit::acceptance::format_line(r) << "\n";
        failed += r.pass ? 0 : 1;
    }
    std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
