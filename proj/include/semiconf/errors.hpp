#ifndef SEMICONF_ERRORS_HPP
#define SEMICONF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semiconf {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative Laguerre index below -1, x <= -a, m outside (0,2), ...).
class parameter_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate so
/// callers can still report it.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// A quantity evaluated in log-space does not fit in a double.
class overflow_error : public std::range_error {
public:
    overflow_error(const std::string& what, double log_value)
        : std::range_error(what), log_value_(log_value) {}

    double log_value() const noexcept { return log_value_; }

private:
    double log_value_;
};

} // namespace semiconf

#endif // SEMICONF_ERRORS_HPP
