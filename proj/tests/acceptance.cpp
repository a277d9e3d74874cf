// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when every criterion passes.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "resonator/corpus.hpp"

namespace {

using namespace resonator;

void print(int id, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << " [" << (pass ? "PASS" : "FAIL") << "] " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
}

std::string tally(const corpus::Criterion& c) {
    std::size_t ok = 0;
    for (const auto& k : c.cases) ok += k.pass ? 1 : 0;
    return std::to_string(ok) + "/" + std::to_string(c.cases.size()) + " cases";
}

std::string run_dump(const corpus::CorpusOptions& opt, const char* threads) {
    ::setenv("RESONATOR_THREADS", threads, 1);
    return corpus::report("all", opt, corpus::run_suite("all", opt)).dump();
}

}  // namespace

int main() {
    const corpus::CorpusOptions opt;
    const auto criteria = corpus::run_suite("all", opt);
    bool all = true;
    for (const auto& c : criteria) {
        const bool pass = c.pass();
        all = all && pass;
        print(c.id, c.name, pass, tally(c));
        if (!pass)
            for (const auto& k : c.cases)
                if (!k.pass) std::cout << "    failed: " << k.name << ": " << k.detail << "\n";
    }

    // Two further runs with the same seed under different worker counts.
    const std::string first = run_dump(opt, "1");
    const std::string second = run_dump(opt, "3");
    const bool same = first == second && first == corpus::report("all", opt, criteria).dump();
    all = all && same;
    print(10, "determinism", same, std::to_string(first.size()) + " bytes per report");
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
