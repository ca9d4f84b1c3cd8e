#pragma once

#include <stdexcept>
#include <string>

namespace gsbell {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count.
struct DimensionError : Error {
    using Error::Error;
};

/// A construction or evaluation precondition does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

/// Problem exceeds a size cap of the exhaustive or dense backends.
struct ResourceError : Error {
    using Error::Error;
};

}  // namespace gsbell
