#include "chainsim/environment.hpp"

#include "chainsim/assert.hpp"
#include "chainsim/contract.hpp"

namespace chainsim {

Environment transfer_balance(Address from, Address to, const Amount& amount,
                             const Environment& env) {
  CHAINSIM_ASSERT(amount >= 0, "transfer amount must be non-negative");
  if (from == to || amount == 0) {
    return env;
  }
  Environment out = env;
  out.chain.balances[from] = checked_sub(out.chain.balance(from), amount);
  out.chain.balances[to] = checked_add(out.chain.balance(to), amount);
  return out;
}

Environment register_contract(Address addr, ContractRef contract,
                              SerializedValue state, const Environment& env) {
  CHAINSIM_ASSERT(is_contract_address(addr),
                  "contracts can only live at contract addresses");
  CHAINSIM_ASSERT(env.contracts.find(addr) == env.contracts.end(),
                  "address already hosts a contract");
  CHAINSIM_ASSERT(contract != nullptr, "contract code must be present");
  Environment out = env;
  out.contracts.emplace(addr, std::move(contract));
  out.contract_states.emplace(addr, std::move(state));
  return out;
}

Environment set_contract_state(Address addr, SerializedValue state,
                               const Environment& env) {
  CHAINSIM_ASSERT(env.contracts.find(addr) != env.contracts.end(),
                  "no contract deployed at address");
  Environment out = env;
  out.contract_states[addr] = std::move(state);
  return out;
}

bool environments_equivalent(const Environment& a, const Environment& b) {
  if (!chains_equivalent(a.chain, b.chain)) {
    return false;
  }
  if (a.contracts.size() != b.contracts.size()) {
    return false;
  }
  for (const auto& [addr, contract] : a.contracts) {
    auto it = b.contracts.find(addr);
    if (it == b.contracts.end() || it->second->name != contract->name) {
      return false;
    }
  }
  return a.contract_states == b.contract_states;
}

}  // namespace chainsim
