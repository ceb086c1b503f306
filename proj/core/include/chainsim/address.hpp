#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace chainsim {

/// Account identifier. The numeric value alone decides whether the address
/// belongs to a user or a contract: everything below kFirstContractAddress
/// is a user account, everything at or above it is a contract account.
struct Address {
  std::uint64_t value = 0;

  auto operator<=>(const Address&) const = default;
};

inline constexpr std::uint64_t kFirstContractAddress = std::uint64_t{1} << 31;

constexpr bool is_contract_address(Address a) {
  return a.value >= kFirstContractAddress;
}

constexpr bool is_user_address(Address a) {
  return !is_contract_address(a);
}

std::string address_to_string(Address a);
std::optional<Address> address_from_string(const std::string& text);

}  // namespace chainsim
