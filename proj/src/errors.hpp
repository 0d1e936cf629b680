#ifndef CIDESIGN_ERRORS_HPP
#define CIDESIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cid {

// Quadrature failed to reach the requested tolerance; carries the achieved
// error estimate so callers can report how far off the result is.
class QuadratureError : public std::runtime_error {
 public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error estimate " +
                             std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved_error() const { return achieved_; }

 private:
    double achieved_;
};

// The regression method's orthogonality precondition does not hold.
class NotApplicableError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Observed data are degenerate (e.g. exact fit with zero residual variance).
class DegenerateDataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cid

#endif
