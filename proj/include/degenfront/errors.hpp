#pragma once

#include <stdexcept>
#include <string>

namespace degenfront {

// Error taxonomy, mapped to CLI exit codes in cli.cpp:
//   invalid_parameter / config parse errors -> 2
//   quadrature_failure, estimation_failure, stability_violation -> 3
//   domain / precondition / inadmissible-law rejections -> 4

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct invalid_law : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct quadrature_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct estimation_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bug guard: unreachable when step sizes obey the stable_dt contract.
struct stability_violation : std::logic_error {
    using std::logic_error::logic_error;
};

struct inadmissible_law : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace degenfront
