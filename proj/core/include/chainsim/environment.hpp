#pragma once

#include "chainsim/action.hpp"
#include "chainsim/chain.hpp"
#include "chainsim/serialized_value.hpp"

#include <map>
#include <vector>

namespace chainsim {

/// Full ledger state: the chain view plus deployed contract code and each
/// contract's stored state. The two contract maps always share a domain.
///
/// Environments are values. Every update function returns a new environment
/// and leaves its input untouched, so snapshots are free to keep.
struct Environment {
  Chain chain;
  std::map<Address, ContractRef> contracts;
  std::map<Address, SerializedValue> contract_states;
};

/// Environment plus the pending action queue; the subject of the step
/// relation. The genesis value (default construction) has height 0, slot 0,
/// no balances, no contracts, and an empty queue.
struct ChainState {
  Environment env;
  std::vector<Action> queue;
};

/// Moves `amount` from one balance to the other. Sufficiency is the
/// evaluator's job, not checked here. Self-transfers and zero amounts leave
/// the environment untouched.
Environment transfer_balance(Address from, Address to, const Amount& amount,
                             const Environment& env);

/// Installs contract code and its initial state at a fresh contract address.
/// Precondition (asserted): `addr` is a contract address not yet in use.
Environment register_contract(Address addr, ContractRef contract,
                              SerializedValue state, const Environment& env);

/// Replaces the stored state of a deployed contract.
/// Precondition (asserted): a contract is deployed at `addr`.
Environment set_contract_state(Address addr, SerializedValue state,
                               const Environment& env);

/// Extensional equality: chains agree on counters and on every tracked
/// balance, contract maps hold the same addresses with identical code
/// identity (registry name) and structurally equal states.
bool environments_equivalent(const Environment& a, const Environment& b);

}  // namespace chainsim
