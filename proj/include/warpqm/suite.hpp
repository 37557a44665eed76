#pragma once

#include "warpqm/deform.hpp"
#include "warpqm/serialize.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace warpqm {

struct CheckResult {
    std::string name;
    bool passed = false;
    /// Residual expression or a short description of the first failing case.
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    /// Random cases for the randomized identities (additivity, Moyal-Weyl, ring axioms).
    std::size_t random_cases = 100;
    DeformOptions deform;
};

struct SuiteEntry {
    std::string name;
    std::function<CheckResult()> run;
};

/// Every symbolic identity of the toolkit, named "group/case". Nothing runs until an entry's
/// `run` is called.
std::vector<SuiteEntry> identity_suite(const SuiteOptions& options = {});

/// Entries whose name starts with one of `prefixes`; an empty prefix list selects everything.
std::vector<SuiteEntry> select(const std::vector<SuiteEntry>& suite, const std::vector<std::string>& prefixes);

struct SuiteReport {
    std::vector<CheckResult> results;
    bool all_passed() const;
    Json to_json() const;
};

SuiteReport run_suite(const std::vector<SuiteEntry>& entries);

}  // namespace warpqm
