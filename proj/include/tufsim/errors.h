#ifndef TUFSIM_ERRORS_H_
#define TUFSIM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tufsim {

// Malformed input text (CSV structure, numbers, dates).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input whose values break a type invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent run configuration (unresolvable names, bad flag combinations).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tufsim

#endif  // TUFSIM_ERRORS_H_
