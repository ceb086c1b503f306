#include "chainsim/address.hpp"

#include <charconv>

namespace chainsim {

std::string address_to_string(Address a) {
  return std::to_string(a.value);
}

std::optional<Address> address_from_string(const std::string& text) {
  if (text.empty() || (text[0] == '0' && text.size() > 1)) {
    return std::nullopt;
  }
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    return std::nullopt;
  }
  return Address{value};
}

}  // namespace chainsim
