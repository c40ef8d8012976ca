#ifndef HYDROSPEC_ERRORS_HPP
#define HYDROSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hydrospec {

/// Error categories; these map one-to-one onto the hs_status codes of the
/// C API, so exceptions thrown anywhere in the core can cross the shared
/// library boundary as plain integers.
enum class ErrorCode : int {
  invalid_argument = 1,  // bad parameters, violated preconditions
  parse = 2,             // malformed input files / configs
  domain = 3,            // evaluation requested where the math is undefined
  numerical = 4,         // quadrature/root-finding/positivity failures
  internal = 5,          // broken internal consistency (should not happen)
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace hydrospec

#endif
