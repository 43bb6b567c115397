#pragma once

#include <stdexcept>
#include <string>

namespace hdreg {

// Invalid or inconsistent configuration (bad dimensions, out-of-range
// parameters, infeasible covariance budget, malformed files).
class ConfigError : public std::invalid_argument {
public:
	explicit ConfigError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Raised by the symmetric solver when the system is singular or too
// ill-conditioned to trust in double precision. Carries the condition
// estimate so callers can report it.
class SingularMatrixError : public std::runtime_error {
public:
	SingularMatrixError(const std::string &msg, double condition_estimate)
	    : std::runtime_error(msg), condition_estimate_(condition_estimate) {}

	double condition_estimate() const { return condition_estimate_; }

private:
	double condition_estimate_ = 0.0;
};

// A guaranteed invariant (budget bound, sensitivity bound, billboard
// isolation) was violated at runtime. Experiments abort on this; it maps to
// CLI exit code 2.
class HardAssertionError : public std::logic_error {
public:
	explicit HardAssertionError(const std::string &msg) : std::logic_error(msg) {}
};

} // namespace hdreg
