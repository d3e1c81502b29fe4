#pragma once

#include <stdexcept>
#include <string>

namespace ibp {

// Bad arguments, chamber violations at input boundaries, capacity overruns.
// The CLI maps this to exit code 2.
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// Runtime numerical failures: non-convergence, poles, stuck paths.
// The CLI maps this to exit code 3.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ibp
