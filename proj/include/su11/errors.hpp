#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrand genuinely singular: Lambda -> 0 while sin(Theta) stays finite.
struct SolvabilityBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToleranceError : std::runtime_error {
    ToleranceError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_estimate(achieved) {}
    double achieved_estimate;
};

struct StiffnessError : std::runtime_error {
    StiffnessError(const std::string& msg, double t_last)
        : std::runtime_error(msg), last_good_time(t_last) {}
    double last_good_time;
};

struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace su11
