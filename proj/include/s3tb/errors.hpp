#pragma once

#include <stdexcept>
#include <string>

namespace s3tb {

/// Potential evaluated at (or too close to) a collision or antipodal configuration.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, double r) : std::runtime_error(what), r_(r) {}
    [[nodiscard]] double r() const { return r_; }

private:
    double r_;
};

/// Step-size underflow or a singularity hit during integration.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    /// Time at which the integrator gave up.
    [[nodiscard]] double time() const { return t_; }

private:
    double t_;
};

/// No relative equilibrium exists for the requested parameters.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace s3tb
