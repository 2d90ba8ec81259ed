#pragma once

#include "qring/errors.hpp"

namespace qring::app {

/// Bad command-line input; reported without running the solver.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qring::app
