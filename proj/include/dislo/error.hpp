#ifndef DISLO_ERROR_HPP_
#define DISLO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dislo {

// Base error for all engine failures (bad fields, degenerate nodes, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for malformed scenario configuration; maps to exit code 2 in the CLI.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace dislo

#endif  // DISLO_ERROR_HPP_
