#pragma once

#include <stdexcept>
#include <string>

namespace urel {

/// Base class for all solver errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A state left the admissible region (p <= 0 or |b| >= a or |w̄| >= w_{d+1}).
class invalid_state_error : public error {
public:
    using error::error;
};

/// Grid construction or balance-region geometry violated (CFL, q > 1).
class grid_error : public error {
public:
    using error::error;
};

/// ODE integration failed (singularity before shock bracket, no sign change).
class integration_error : public error {
public:
    using error::error;
};

/// Eigen decomposition hit a degenerate frame (D ~ 0 or coincident waves).
class degenerate_frame_error : public error {
public:
    using error::error;
};

/// A space-time record is too thin for the requested diagnostic.
class insufficient_record_error : public error {
public:
    using error::error;
};

/// The 2D solver lost positivity beyond what the pressure floor can absorb.
class blowup_error : public error {
public:
    using error::error;
};

} // namespace urel
