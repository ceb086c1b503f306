#pragma once

#include "chainsim/address.hpp"
#include "chainsim/amount.hpp"

#include <cstdint>
#include <map>

namespace chainsim {

/// The contract-facing view of the blockchain: progression counters plus
/// account balances. Balances are tracked sparsely; an absent entry reads
/// as zero.
struct Chain {
  std::uint64_t chain_height = 0;
  std::uint64_t current_slot = 0;
  std::uint64_t finalized_height = 0;
  std::map<Address, Amount> balances;

  Amount balance(Address a) const {
    auto it = balances.find(a);
    return it == balances.end() ? Amount(0) : it->second;
  }

  bool operator==(const Chain&) const = default;
};

struct BlockHeader {
  std::uint64_t block_height = 0;
  std::uint64_t slot = 0;
  std::uint64_t finalized_height = 0;
  Address creator;
  Amount reward = 0;

  bool operator==(const BlockHeader&) const = default;
};

/// Call metadata handed to a contract: who triggered the execution, the
/// contract's own address, and the money attached to the call.
struct ContractCallContext {
  Address from;
  Address contract_address;
  Amount amount = 0;

  bool operator==(const ContractCallContext&) const = default;
};

/// Sum of every tracked balance.
Amount total_balance(const Chain& chain);

/// Extensional comparison: the chains agree on the counters and on the
/// balance of every address tracked by either side.
bool chains_equivalent(const Chain& a, const Chain& b);

}  // namespace chainsim
