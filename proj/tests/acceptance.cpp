// Runs every acceptance criterion at its stated size and prints one
// PASS/FAIL line per criterion. Exit status is 0 only if all pass.

#include "qmono/acceptance.hpp"

#include <cstdio>
#include <iostream>

int main()
{
    unsigned threads = 1;
    try {
        threads = qmono::thread_count_from_env();
    } catch (const qmono::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    int failed = 0;
    qmono::run_acceptance(threads, [&](const qmono::CriterionResult& r) {
        std::cout << qmono::format_criterion(r);
        std::printf(" %.2fs\n", r.seconds);
        std::fflush(stdout);
        failed += r.passed ? 0 : 1;
    });
    std::cout << (failed ? "FAILED: " : "all criteria passed") << (failed ? std::to_string(failed) + " criteria" : "")
              << std::endl;
    return failed ? 1 : 0;
}
