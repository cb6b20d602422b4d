#pragma once

namespace cqc::cli {

// Full command-line entry point; returns the process exit code
// (0 success, 2 validation error, 3 resource budget, 4 solver non-convergence).
int run(int argc, const char* const* argv);

}  // namespace cqc::cli
