#ifndef REFEVAL_ERROR_HPP
#define REFEVAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace refeval {

// Raised for malformed or inconsistent input data (bad rows, missing cells,
// violated corpus invariants). The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for invalid arguments to library operations (bad selector syntax,
// fraction out of range, instance too large). The CLI maps this to exit 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace refeval

#endif  // REFEVAL_ERROR_HPP
