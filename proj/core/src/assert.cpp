#include "chainsim/assert.hpp"

namespace chainsim::detail {

void assertion_failed(const char* expr, const char* file, int line,
                      const std::string& message) {
  throw AssertionError(std::string(file) + ":" + std::to_string(line) +
                       ": assertion `" + expr + "` failed: " + message);
}

}  // namespace chainsim::detail
