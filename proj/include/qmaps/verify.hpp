// verify.hpp — invariant battery behind `qmaps verify`

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qmaps/kernels.hpp"

namespace qmaps {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass{false};
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed{42};
    std::size_t sample_budget{10000};
    Exec exec{Exec::Parallel};
};

// linalg, channels, generators, regions, dynamics
const std::vector<std::string_view>& verify_suites();

// suite is one of verify_suites() or "all". Throws UnknownName otherwise.
std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& opt = {});

} // namespace qmaps
