#ifndef DIAGSSP_ERRORS_HPP
#define DIAGSSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diagssp {

// Bad argument or configuration supplied by the caller. CLI maps this to exit 2.
class usage_error : public std::invalid_argument {
public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured resource guard (field size, DP state space, enumeration budget)
// would be exceeded. CLI maps this to exit 3.
class limit_exceeded : public std::runtime_error {
public:
  explicit limit_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure (e.g. an exact division that must be exact is
// not). Signals an implementation bug, never bad input.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace diagssp

#endif
