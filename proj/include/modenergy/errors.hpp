#pragma once

#include <stdexcept>

namespace modenergy {

/// A caller-supplied value violates a documented precondition.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The active-mode duration of a scheme does not fit in T_N - T_tr.
class frame_overrun : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested symbol-error target cannot be reached by the scheme at any SNR.
class unattainable_target : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative solver exhausted its iteration budget.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent scenario configuration.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace modenergy
