#ifndef OPBW_ERRORS_HPP
#define OPBW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opbw {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A lattice computation ran against its configured spatial window.
/// The result would be truncated, so the operation refuses to return one;
/// callers may retry with a larger window.
class WindowOverflowError : public Error {
 public:
  explicit WindowOverflowError(const std::string& what) : Error(what) {}
};

/// No surviving start was found inside the left search window of a
/// half-line rightmost-path query. Signals the search width is too small
/// for the given p and horizon.
class NoSurvivorError : public Error {
 public:
  explicit NoSurvivorError(const std::string& what) : Error(what) {}
};

/// An estimator did not observe enough data (e.g. regeneration points)
/// to report a trustworthy value.
class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& what) : Error(what) {}
};

/// Invalid experiment configuration or operation arguments.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace opbw

#endif  // OPBW_ERRORS_HPP
