#pragma once

#include <stdexcept>
#include <string>

namespace curvosc {

// Thrown when an adaptive quadrature cannot reach its accuracy target.
// Carries the achieved error estimate so callers can decide whether the
// result is still usable.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved(achieved_error) {}

  double achieved;
};

}  // namespace curvosc
