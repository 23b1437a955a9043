#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

enum class ErrorCode {
  InvalidArgument = 1,  // bad parameter or malformed input
  Parse = 2,            // preset text could not be parsed
  Hypothesis = 3,       // a structural hypothesis needed by the operation fails
  Numeric = 4,          // iteration failed to converge or left its admissible set
  Io = 5,               // file could not be read or written
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace kpp
