#include "chainsim/chain.hpp"

namespace chainsim {

Amount total_balance(const Chain& chain) {
  Amount sum = 0;
  for (const auto& [addr, amount] : chain.balances) {
    sum = checked_add(sum, amount);
  }
  return sum;
}

bool chains_equivalent(const Chain& a, const Chain& b) {
  if (a.chain_height != b.chain_height || a.current_slot != b.current_slot ||
      a.finalized_height != b.finalized_height) {
    return false;
  }
  for (const auto& [addr, amount] : a.balances) {
    if (b.balance(addr) != amount) {
      return false;
    }
  }
  for (const auto& [addr, amount] : b.balances) {
    if (a.balance(addr) != amount) {
      return false;
    }
  }
  return true;
}

}  // namespace chainsim
