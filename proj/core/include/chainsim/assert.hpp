#pragma once

#include <stdexcept>
#include <string>

namespace chainsim {

/// Raised when an engine precondition is violated. These mark defects in the
/// calling code, not runtime error paths, and are active in every build mode.
class AssertionError : public std::logic_error {
 public:
  explicit AssertionError(const std::string& what) : std::logic_error(what) {}
};

namespace detail {
[[noreturn]] void assertion_failed(const char* expr, const char* file, int line,
                                   const std::string& message);
}

#define CHAINSIM_ASSERT(expr, message)                                        \
  do {                                                                        \
    if (!(expr)) {                                                            \
      ::chainsim::detail::assertion_failed(#expr, __FILE__, __LINE__,         \
                                           (message));                       \
    }                                                                         \
  } while (false)

}  // namespace chainsim
